#pragma once

// The boundary complex of M̄_{g,n}: one vertex per boundary divisor, one face
// per set of divisors with nonempty intersection.

#include <array>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/lattice.hpp"

namespace strata {

/// Sorted vertex indices.
using Face = std::vector<std::size_t>;

struct BoundaryComplex {
    GnSignature signature;
    /// Divisor keys in key order; a vertex index is a position here.
    std::vector<CanonicalKey> vertices;
    /// faces[j - 1] holds the faces with j vertices. Trailing empty sizes are dropped.
    std::vector<std::set<Face>> faces;
    /// Largest face size that was computed; below the dimension for partial builds.
    std::size_t max_face_size = 0;

    bool truncated() const { return max_face_size < static_cast<std::size_t>(std::max(0, signature.dimension())); }

    bool is_face(const Face& f) const {
        if (f.empty()) return true;
        if (f.size() > faces.size()) return false;
        return faces[f.size() - 1].count(f) != 0;
    }

    std::optional<std::size_t> index_of(const CanonicalKey& key) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), key);
        if (it == vertices.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - vertices.begin());
    }

    /// Maximal faces, ordered by size then lexicographically.
    std::vector<Face> facets() const {
        std::vector<Face> out;
        for (std::size_t j = 0; j < faces.size(); ++j) {
            for (const Face& f : faces[j]) {
                bool maximal = true;
                if (j + 1 < faces.size()) {
                    for (const Face& bigger : faces[j + 1]) {
                        if (std::includes(bigger.begin(), bigger.end(), f.begin(), f.end())) {
                            maximal = false;
                            break;
                        }
                    }
                }
                if (maximal) out.push_back(f);
            }
        }
        return out;
    }
};

/// Builds the complex from the delta sets of all strata with up to
/// `max_face_size` edges (default: the full dimension 3g-3+n).
inline BoundaryComplex boundary_complex(StrataCatalog& catalog, std::optional<std::size_t> max_face_size = {}) {
    BoundaryComplex c;
    c.signature = catalog.signature();
    const std::size_t dim = catalog.max_edges();
    c.max_face_size = max_face_size.value_or(dim);
    if (c.max_face_size > dim) {
        throw std::invalid_argument("max face size " + std::to_string(c.max_face_size) + " exceeds dimension " +
                                    std::to_string(dim));
    }
    for (const auto& [key, g] : catalog.divisors().graphs) c.vertices.push_back(key);
    if (c.vertices.empty()) return c;

    for (std::size_t j = 1; j <= c.max_face_size; ++j) {
        std::set<Face> level;
        for (const auto& [divs, graphs] : catalog.deltas(j).by_divisor_set) {
            Face f;
            f.reserve(divs.size());
            for (const CanonicalKey& k : divs) f.push_back(*c.index_of(k));
            level.insert(std::move(f));
        }
        c.faces.push_back(std::move(level));
    }
    while (!c.faces.empty() && c.faces.back().empty()) c.faces.pop_back();
    return c;
}

/// Face counts by size: entry j-1 counts faces with j vertices.
inline std::vector<std::size_t> f_vector(const BoundaryComplex& c) {
    std::vector<std::size_t> out;
    for (const auto& level : c.faces) out.push_back(level.size());
    return out;
}

/// Every subset of every facet is a face.
inline bool is_downward_closed(const BoundaryComplex& c) {
    for (const Face& facet : c.facets()) {
        const std::size_t m = facet.size();
        for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
            Face sub;
            for (std::size_t i = 0; i < m; ++i) {
                if ((mask >> i) & 1UL) sub.push_back(facet[i]);
            }
            if (!c.is_face(sub)) return false;
        }
    }
    return true;
}

struct WitnessReport {
    std::vector<CanonicalKey> clique;
    bool is_face = false;
    std::vector<DualGraph> components;
    bool pairwise_ok = false;
};

struct FlagResult {
    bool flag = true;
    /// For non-flag complexes: the smallest clique that is not a face,
    /// ties broken lexicographically on sorted keys.
    std::optional<WitnessReport> witness;
};

/// Walks the cliques of the 1-skeleton by size. All cliques of one size are
/// faces before the next size is generated, so the first failing size yields
/// the minimal witness.
inline FlagResult is_flag(const BoundaryComplex& c) {
    FlagResult result;
    const std::size_t nv = c.vertices.size();
    if (nv == 0 || c.faces.size() < 2) return result;

    std::vector<std::vector<bool>> adjacent(nv, std::vector<bool>(nv, false));
    for (const Face& e : c.faces[1]) adjacent[e[0]][e[1]] = adjacent[e[1]][e[0]] = true;

    std::vector<Face> cliques(c.faces[1].begin(), c.faces[1].end());
    for (std::size_t size = 3; !cliques.empty(); ++size) {
        if (c.truncated() && size > c.max_face_size) break;
        std::vector<Face> next;
        std::optional<Face> witness;
        for (const Face& q : cliques) {
            for (std::size_t v = q.back() + 1; v < nv; ++v) {
                bool ok = true;
                for (std::size_t u : q) ok = ok && adjacent[u][v];
                if (!ok) continue;
                Face bigger = q;
                bigger.push_back(v);
                if (!c.is_face(bigger)) {
                    if (!witness || bigger < *witness) witness = bigger;
                } else if (!witness) {
                    next.push_back(std::move(bigger));
                }
            }
        }
        if (witness) {
            result.flag = false;
            WitnessReport w;
            for (std::size_t i : *witness) w.clique.push_back(c.vertices[i]);
            w.is_face = false;
            w.pairwise_ok = true;
            result.witness = std::move(w);
            return result;
        }
        cliques = std::move(next);
    }
    return result;
}

/// Full report for an arbitrary set of divisors of the complex's signature.
inline WitnessReport witness_report(StrataCatalog& catalog, const BoundaryComplex& c, const DivisorSet& s) {
    WitnessReport w;
    w.clique = s.sorted();
    IntersectionReport ix = intersection_components(catalog, s);
    w.components = ix.components;
    w.is_face = ix.nonempty;
    Face idx;
    for (const CanonicalKey& k : w.clique) idx.push_back(*c.index_of(k));
    w.pairwise_ok = true;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) w.pairwise_ok = w.pairwise_ok && c.is_face({idx[i], idx[j]});
    }
    return w;
}

// ---------------------------------------------------------------------------
// Counterexample families and the universal degenerations.

/// D_i in M̄_{2,n}: genus-1 vertex with every mark but i, joined to a genus-1 vertex carrying i.
inline DualGraph pinwheel_divisor(int n, int i) {
    if (n < 3 || i < 1 || i > n) throw std::invalid_argument("pinwheel divisor needs n >= 3 and 1 <= i <= n");
    std::vector<VertexId> legs(static_cast<std::size_t>(n), 0);
    legs[static_cast<std::size_t>(i - 1)] = 1;
    return DualGraph({1, 1}, {Edge(0, 1)}, std::move(legs));
}

inline DivisorSet pinwheel_family(int n) {
    if (n < 3) throw std::invalid_argument("pinwheel family needs n >= 3");
    std::vector<DualGraph> gs;
    for (int i = 1; i <= n; ++i) gs.push_back(pinwheel_divisor(n, i));
    return make_divisor_set({2, n}, gs);
}

/// The chain 1(i) - 0(other marks) - 1(j) lying in D_i ∩ D_j.
inline DualGraph pinwheel_pair_graph(int n, int i, int j) {
    if (n < 3 || i < 1 || j < 1 || i > n || j > n || i == j) {
        throw std::invalid_argument("pinwheel pair needs n >= 3 and distinct marks");
    }
    std::vector<VertexId> legs(static_cast<std::size_t>(n), 1);
    legs[static_cast<std::size_t>(i - 1)] = 0;
    legs[static_cast<std::size_t>(j - 1)] = 2;
    return DualGraph({1, 0, 1}, {Edge(0, 1), Edge(1, 2)}, std::move(legs));
}

namespace detail {
inline void require_high_genus(int g, int n) {
    if (g < 3 || n < 2) throw std::invalid_argument("high-genus triple needs g >= 3 and n >= 2");
}
inline std::vector<VertexId> marks_split(int n, VertexId first, VertexId rest) {
    std::vector<VertexId> legs(static_cast<std::size_t>(n), rest);
    legs[0] = first;
    return legs;
}
}  // namespace detail

/// D1: (g-1) - 1{1..n};  D2: (g-1){1} - 1{2..n};  D3: (g-1){2..n} - 1{1}.
inline std::array<DualGraph, 3> high_genus_divisors(int g, int n) {
    detail::require_high_genus(g, n);
    return {DualGraph({g - 1, 1}, {Edge(0, 1)}, std::vector<VertexId>(static_cast<std::size_t>(n), 1)),
            DualGraph({g - 1, 1}, {Edge(0, 1)}, detail::marks_split(n, 0, 1)),
            DualGraph({g - 1, 1}, {Edge(0, 1)}, detail::marks_split(n, 1, 0))};
}

inline DivisorSet high_genus_triple(int g, int n) {
    auto d = high_genus_divisors(g, n);
    return make_divisor_set({g, n}, {d.begin(), d.end()});
}

/// Strata lying in D1∩D2, D1∩D3 and D2∩D3 respectively.
inline std::array<DualGraph, 3> high_genus_pair_graphs(int g, int n) {
    detail::require_high_genus(g, n);
    // vertices: 0 = outer genus g-1 (or 1), 1 = middle, 2 = outer genus 1
    return {DualGraph({g - 1, 0, 1}, {Edge(0, 1), Edge(1, 2)}, detail::marks_split(n, 1, 2)),
            DualGraph({g - 1, 0, 1}, {Edge(0, 1), Edge(1, 2)}, detail::marks_split(n, 2, 1)),
            DualGraph({1, g - 2, 1}, {Edge(0, 1), Edge(1, 2)}, detail::marks_split(n, 2, 0))};
}

/// Chain of g-1 genus-one vertices ending in a genus-zero vertex with a loop
/// (and mark 1 when n = 1). Degenerates every boundary divisor for n <= 1.
inline DualGraph universal_degeneration(GnSignature sig) {
    if (sig.n < 0 || sig.n > 1 || sig.g < 2 - sig.n) {
        throw std::invalid_argument("universal degeneration needs n = 0 with g >= 2 or n = 1 with g >= 1");
    }
    const auto tail = static_cast<VertexId>(sig.g - 1);
    std::vector<int> genera(tail, 1);
    genera.push_back(0);
    std::vector<Edge> edges;
    for (VertexId v = 0; v < tail; ++v) edges.emplace_back(v, v + 1);
    edges.emplace_back(tail, tail);
    return DualGraph(std::move(genera), std::move(edges), std::vector<VertexId>(static_cast<std::size_t>(sig.n), tail));
}

// ---------------------------------------------------------------------------

/// Flag iff g <= 1, n <= 1, or (g, n) = (2, 2).
inline bool predicted_flag(GnSignature sig) { return sig.g <= 1 || sig.n <= 1 || (sig.g == 2 && sig.n == 2); }

struct TheoremVerdict {
    GnSignature signature;
    bool predicted = false;
    std::optional<bool> computed;  // empty when skipped
    std::optional<WitnessReport> witness;
    bool skipped = false;
    std::string note;
    double seconds = 0.0;

    bool agrees() const { return computed.has_value() && *computed == predicted; }
};

inline TheoremVerdict check_theorem(GnSignature sig, const EnumerationOptions& opts = {}) {
    require_exists(sig);
    TheoremVerdict v;
    v.signature = sig;
    v.predicted = predicted_flag(sig);
    const auto start = std::chrono::steady_clock::now();
    try {
        StrataCatalog catalog(sig, opts);
        FlagResult r = is_flag(boundary_complex(catalog));
        v.computed = r.flag;
        v.witness = std::move(r.witness);
    } catch (const BudgetExceeded& e) {
        v.skipped = true;
        v.note = e.what();
    }
    v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

}  // namespace strata
