#pragma once

// Randomized property suites over enumerated strata. Each suite draws cases
// from a fixed-seed generator and reports how many ran and which failed.

#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "strata/strata.hpp"
#include "support/oracles.hpp"

namespace strata::props {

struct Outcome {
    explicit Outcome(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (!ok && failures++ == 0) first_failure = what;
    }
    bool passed() const { return failures == 0; }
};

/// Catalogs shared across suites so each signature is enumerated once.
class Pool {
  public:
    StrataCatalog& catalog(GnSignature sig) {
        auto it = catalogs_.find(sig);
        if (it == catalogs_.end()) it = catalogs_.emplace(sig, std::make_unique<StrataCatalog>(sig)).first;
        return *it->second;
    }
    const std::vector<DualGraph>& graphs(GnSignature sig, std::size_t min_edges = 0) {
        auto key = std::make_pair(sig, min_edges);
        auto it = graphs_.find(key);
        if (it == graphs_.end()) it = graphs_.emplace(key, oracle::all_strata(catalog(sig), min_edges)).first;
        return it->second;
    }
    const BoundaryComplex& complex(GnSignature sig) {
        auto it = complexes_.find(sig);
        if (it == complexes_.end()) it = complexes_.emplace(sig, boundary_complex(catalog(sig))).first;
        return it->second;
    }

  private:
    std::map<GnSignature, std::unique_ptr<StrataCatalog>> catalogs_;
    std::map<std::pair<GnSignature, std::size_t>, std::vector<DualGraph>> graphs_;
    std::map<GnSignature, BoundaryComplex> complexes_;
};

inline const std::vector<GnSignature>& small_signatures() {
    static const std::vector<GnSignature> sigs{{0, 5}, {0, 6}, {1, 2}, {1, 3}, {1, 4}, {2, 0},
                                               {2, 1}, {2, 2}, {2, 3}, {3, 0}, {3, 1}};
    return sigs;
}

inline std::string show(const DualGraph& g) { return describe(g); }

inline std::vector<DualGraph> tree_type(const std::vector<DualGraph>& gs, std::size_t min_edges = 0) {
    std::vector<DualGraph> out;
    for (const DualGraph& g : gs) {
        if (is_tree_type(g) && g.edge_count() >= min_edges) out.push_back(g);
    }
    return out;
}

inline Outcome smoothing_commutes(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"smoothing commutativity"};
    std::mt19937_64 rng(seed);
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(small_signatures(), rng);
        const auto& gs = pool.graphs(sig, 2);
        if (gs.empty()) continue;
        DualGraph g = oracle::scramble(oracle::pick(gs, rng), rng);
        std::uniform_int_distribution<EdgeId> d(0, g.edge_count() - 1);
        EdgeId e = d(rng), f = d(rng);
        if (e == f) continue;
        DualGraph ef = smooth(smooth(g, e), f - (f > e));
        DualGraph fe = smooth(smooth(g, f), e - (e > f));
        const std::vector<EdgeId> both{e, f};
        DualGraph at_once = smooth_set(g, both);
        out.check(is_isomorphic(ef, fe) && is_isomorphic(ef, at_once) && oracle::brute_isomorphic(ef, fe),
                  show(g) + " edges " + std::to_string(e) + "," + std::to_string(f));
    }
    return out;
}

inline Outcome smoothing_preserves(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"genus/stability/leg preservation under smoothing"};
    std::mt19937_64 rng(seed);
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(small_signatures(), rng);
        const auto& gs = pool.graphs(sig, 1);
        if (gs.empty()) continue;
        DualGraph g = oracle::scramble(oracle::pick(gs, rng), rng);
        EdgeId e = std::uniform_int_distribution<EdgeId>(0, g.edge_count() - 1)(rng);
        DualGraph s = smooth(g, e);
        bool ok = total_genus(s) == total_genus(g) && is_stable(s) && s.edge_count() + 1 == g.edge_count() &&
                  s.mark_count() == g.mark_count();
        // marks together before stay together, and the endpoints' marks merge
        const Edge& ed = g.edge(e);
        for (std::size_t a = 1; a <= g.mark_count() && ok; ++a) {
            for (std::size_t b = a + 1; b <= g.mark_count() && ok; ++b) {
                auto side = [&](VertexId v) { return v == ed.b ? ed.a : v; };
                bool before = side(g.leg(a)) == side(g.leg(b));
                ok = before == (s.leg(a) == s.leg(b));
            }
        }
        out.check(ok, show(g) + " edge " + std::to_string(e));
    }
    return out;
}

inline Outcome canonical_matches_brute_force(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"canonical key vs brute-force isomorphism (V <= 7)"};
    std::mt19937_64 rng(seed);
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(small_signatures(), rng);
        const auto& gs = pool.graphs(sig);
        const DualGraph& a = oracle::pick(gs, rng);
        if (a.vertex_count() > 7) continue;
        DualGraph b = oracle::scramble(a, rng);
        if (rng() % 2) {
            // a random graph with the same edge count, also scrambled
            const DualGraph& c = oracle::pick(gs, rng);
            if (c.edge_count() != a.edge_count() || c.vertex_count() > 7) continue;
            b = oracle::scramble(c, rng);
        }
        bool fast = canonical_key(a) == canonical_key(b);
        out.check(fast == oracle::brute_isomorphic(a, b) && fast == is_isomorphic(a, b), show(a) + " vs " + show(b));
    }
    return out;
}

inline Outcome degeneration_partial_order(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"degeneration partial order"};
    std::mt19937_64 rng(seed);
    auto random_smoothing = [&](const DualGraph& g) {
        std::vector<EdgeId> subset;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (rng() % 2) subset.push_back(e);
        }
        return oracle::scramble(smooth_set(g, subset), rng);
    };
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(small_signatures(), rng);
        const auto& gs = pool.graphs(sig);
        DualGraph a = oracle::pick(gs, rng);
        // chain a >= b >= c; transitivity must find a >= c
        DualGraph b = random_smoothing(a);
        DualGraph c = random_smoothing(b);
        bool ok = is_degeneration(a, oracle::scramble(a, rng)) && is_degeneration(a, b) && is_degeneration(b, c) &&
                  is_degeneration(a, c);
        // antisymmetry on a random pair
        const DualGraph& x = oracle::pick(gs, rng);
        const DualGraph& y = oracle::pick(gs, rng);
        if (is_degeneration(x, y) && is_degeneration(y, x)) ok = ok && is_isomorphic(x, y);
        // one-edge targets: degeneration iff the divisor is a delta value
        if (x.edge_count() >= 1 && y.edge_count() == 1) {
            auto sup = delta_support(x);
            bool in = std::binary_search(sup.begin(), sup.end(), canonical_key(y));
            ok = ok && (in == is_degeneration(x, y));
        }
        out.check(ok, show(a) + " / " + show(x) + " / " + show(y));
    }
    return out;
}

inline Outcome complex_is_downward_closed(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"complex downward closure and face <=> nonempty intersection"};
    std::mt19937_64 rng(seed);
    std::vector<GnSignature> sigs{{0, 5}, {0, 6}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {2, 3}, {3, 1}};
    for (GnSignature sig : sigs) out.check(is_downward_closed(pool.complex(sig)), "closure " + to_string(sig));
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(sigs, rng);
        const BoundaryComplex& c = pool.complex(sig);
        StrataCatalog& catalog = pool.catalog(sig);
        // random face, random subface
        std::size_t level = std::uniform_int_distribution<std::size_t>(0, c.faces.size() - 1)(rng);
        std::vector<Face> fs(c.faces[level].begin(), c.faces[level].end());
        const Face& f = oracle::pick(fs, rng);
        Face sub;
        for (std::size_t i : f) {
            if (rng() % 2) sub.push_back(i);
        }
        bool ok = c.is_face(sub);
        // random vertex set: face iff the divisors meet
        std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min(c.vertices.size(), catalog.max_edges()))(rng);
        std::vector<std::size_t> idx(c.vertices.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::shuffle(idx.begin(), idx.end(), rng);
        Face probe(idx.begin(), idx.begin() + static_cast<long>(size));
        std::sort(probe.begin(), probe.end());
        DivisorSet s{sig, {}};
        for (std::size_t i : probe) s.keys.insert(c.vertices[i]);
        bool meets = intersect_nonempty(catalog, s);
        ok = ok && c.is_face(probe) == meets && meets == lies_in_common_stratum(catalog, s);
        out.check(ok, to_string(sig));
    }
    return out;
}

/// Nonempty intersections of distinct divisors have one component: (0, n <= 6)
/// and tree-type divisors in (1, n <= 4).
inline Outcome single_component(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"uniqueness of the intersection stratum"};
    std::mt19937_64 rng(seed);
    std::vector<GnSignature> sigs{{0, 4}, {0, 5}, {0, 6}, {1, 1}, {1, 2}, {1, 3}, {1, 4}};
    // exhaustive pass over every face, then random draws
    for (GnSignature sig : sigs) {
        for (std::size_t k = 1; k <= pool.catalog(sig).max_edges(); ++k) {
            for (const auto& [divs, graphs] : pool.catalog(sig).deltas(k).by_divisor_set) {
                bool trees = true;
                for (const auto& d : divs) trees = trees && is_tree_type(graph_from_key(d));
                if (trees) out.check(graphs.size() == 1, to_string(sig) + " k=" + std::to_string(k));
            }
        }
    }
    std::size_t target = out.cases + cases;
    while (out.cases < target) {
        GnSignature sig = oracle::pick(sigs, rng);
        auto trees = tree_type(pool.graphs(sig, 1));
        if (trees.empty()) continue;
        const DualGraph& g = oracle::pick(trees, rng);
        auto sup = delta_support(g);
        // a random nonempty subset of the support is again one stratum
        DivisorSet s{sig, {}};
        for (const auto& k : sup) {
            if (rng() % 2) s.keys.insert(k);
        }
        if (s.keys.empty()) s.keys.insert(sup.front());
        IntersectionReport r = intersection_components(pool.catalog(sig), s);
        out.check(r.components.size() == 1, show(g));
    }
    return out;
}

/// Every stratum (tree-type when g = 1) has pairwise distinct delta values.
inline Outcome distinct_deltas(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"uniqueness of the divisor collection"};
    std::mt19937_64 rng(seed);
    std::vector<GnSignature> sigs{{0, 4}, {0, 5}, {0, 6}, {1, 1}, {1, 2}, {1, 3}, {1, 4}};
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(sigs, rng);
        auto trees = tree_type(pool.graphs(sig, 1));
        if (trees.empty()) continue;
        DualGraph g = oracle::scramble(oracle::pick(trees, rng), rng);
        auto ms = delta_multiset(g);
        bool distinct = std::adjacent_find(ms.begin(), ms.end()) == ms.end() && ms.size() == g.edge_count();
        // and they cut out exactly this stratum
        IntersectionReport r = intersection_components(pool.catalog(sig), DivisorSet{sig, {ms.begin(), ms.end()}});
        out.check(distinct && r.components.size() == 1 && is_isomorphic(r.components[0], g), show(g));
    }
    return out;
}

/// sigma: bijection, round trip, inclusion in both directions, and
/// sigma(D_1 ∩ ... ∩ D_k) = sigma(D_1) ∩ ... ∩ sigma(D_k) for n <= 3.
inline Outcome sigma_properties(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"sigma bijection / round trip / inclusion / intersections"};
    std::mt19937_64 rng(seed);
    for (int n = 1; n <= 3; ++n) {
        std::set<CanonicalKey> image;
        auto trees = tree_type(pool.graphs({1, n}));
        for (const DualGraph& g : trees) image.insert(canonical_key(sigma(g)));
        out.check(image.size() == trees.size(), "sigma not injective for n=" + std::to_string(n));
    }
    while (out.cases < cases) {
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        GnSignature one{1, n}, zero{0, n + 2};
        auto trees = tree_type(pool.graphs(one));
        DualGraph a = oracle::scramble(oracle::pick(trees, rng), rng);
        DualGraph b = oracle::scramble(oracle::pick(trees, rng), rng);
        bool ok = is_isomorphic(sigma_inverse(sigma(a)), a);
        ok = ok && is_degeneration(a, b) == is_degeneration(sigma(a), sigma(b));

        // random set of tree-type divisors
        auto tree_divs = tree_type(pool.graphs(one, 1));
        std::erase_if(tree_divs, [](const DualGraph& g) { return g.edge_count() != 1; });
        if (tree_divs.empty()) {
            out.check(ok, show(a) + " / " + show(b));
            continue;
        }
        std::shuffle(tree_divs.begin(), tree_divs.end(), rng);
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(tree_divs.size(), n))(rng);
        DivisorSet s{one, {}}, t{zero, {}};
        for (std::size_t i = 0; i < k; ++i) {
            s.keys.insert(canonical_key(tree_divs[i]));
            t.keys.insert(canonical_key(sigma(tree_divs[i])));
        }
        std::set<CanonicalKey> lhs, rhs;
        for (const DualGraph& c : intersection_components(pool.catalog(one), s).components) {
            lhs.insert(canonical_key(sigma(c)));
        }
        // more divisors than the dimension never meet
        if (t.size() <= pool.catalog(zero).max_edges()) {
            for (const DualGraph& c : intersection_components(pool.catalog(zero), t).components) {
                rhs.insert(canonical_key(c));
            }
        }
        out.check(ok && lhs == rhs, show(a) + " / " + show(b));
    }
    return out;
}

/// In genus one, δ_irr together with the divisors containing any stratum still meet.
inline Outcome irreducible_divisor_meets_everything(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"delta_irr meets every stratum in genus 1"};
    std::mt19937_64 rng(seed);
    while (out.cases < cases) {
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        GnSignature sig{1, n};
        const DualGraph& g = oracle::pick(pool.graphs(sig, 1), rng);
        std::vector<VertexId> legs(static_cast<std::size_t>(n), 0);
        DivisorSet s{sig, {canonical_key(DualGraph({0}, {Edge(0, 0)}, legs))}};
        for (const auto& k : delta_support(g)) s.keys.insert(k);
        out.check(s.keys.size() <= pool.catalog(sig).max_edges() && intersect_nonempty(pool.catalog(sig), s), show(g));
    }
    return out;
}

/// If some stratum lies in every divisor of S, an |S|-edge stratum has delta set exactly S.
inline Outcome reduction_property(Pool& pool, std::size_t cases, std::uint64_t seed) {
    Outcome out{"superset search reduces to exact search"};
    std::mt19937_64 rng(seed);
    while (out.cases < cases) {
        GnSignature sig = oracle::pick(small_signatures(), rng);
        const auto& gs = pool.graphs(sig, 1);
        if (gs.empty()) continue;
        const DualGraph& g = oracle::pick(gs, rng);
        auto sup = delta_support(g);
        DivisorSet s{sig, {}};
        for (const auto& k : sup) {
            if (rng() % 2) s.keys.insert(k);
        }
        if (s.keys.empty()) s.keys.insert(sup.back());
        out.check(intersect_nonempty(pool.catalog(sig), s), show(g));
    }
    return out;
}

inline std::vector<Outcome> run_all(std::size_t cases = 1000, std::uint64_t seed = 20240611) {
    Pool pool;
    return {smoothing_commutes(pool, cases, seed + 1),
            smoothing_preserves(pool, cases, seed + 2),
            canonical_matches_brute_force(pool, cases, seed + 3),
            degeneration_partial_order(pool, cases, seed + 4),
            complex_is_downward_closed(pool, cases, seed + 5),
            single_component(pool, cases, seed + 6),
            distinct_deltas(pool, cases, seed + 7),
            sigma_properties(pool, cases, seed + 8),
            irreducible_divisor_meets_everything(pool, cases, seed + 9),
            reduction_property(pool, cases, seed + 10)};
}

}  // namespace strata::props
