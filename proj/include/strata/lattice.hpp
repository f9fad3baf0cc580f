#pragma once

// Intersections of boundary divisors, read off from dual graphs, and the
// genus-one reduction sigma onto genus-zero strata with two extra marks.

#include <set>
#include <vector>

#include "strata/enumeration.hpp"

namespace strata {

/// Distinct boundary divisors of one signature, by key.
struct DivisorSet {
    GnSignature signature;
    std::set<CanonicalKey> keys;

    std::size_t size() const { return keys.size(); }
    std::vector<CanonicalKey> sorted() const { return {keys.begin(), keys.end()}; }
};

inline DivisorSet make_divisor_set(GnSignature sig, const std::vector<DualGraph>& graphs) {
    DivisorSet s{sig, {}};
    for (const DualGraph& g : graphs) s.keys.insert(canonical_key(g));
    return s;
}

struct IntersectionReport {
    DivisorSet input;
    /// Canonical graphs with |input| edges whose delta values are exactly the
    /// input, in key order. One per irreducible component.
    std::vector<DualGraph> components;
    bool nonempty = false;
};

/// A tree: no loops and no nonseparating edges.
inline bool is_tree_type(const DualGraph& g) {
    for (const Edge& e : g.edges()) {
        if (e.is_loop()) return false;
    }
    return g.edge_count() + 1 == g.vertex_count();
}

inline void require_divisors(StrataCatalog& catalog, const DivisorSet& s) {
    if (s.signature != catalog.signature()) {
        throw std::invalid_argument("divisor set signature " + to_string(s.signature) + " does not match " +
                                    to_string(catalog.signature()));
    }
    if (s.keys.empty()) throw std::invalid_argument("empty divisor set");
    if (s.keys.size() > catalog.max_edges()) {
        throw std::invalid_argument(std::to_string(s.keys.size()) + " divisors exceed dimension " +
                                    std::to_string(catalog.max_edges()));
    }
    const StratumSet& divs = catalog.divisors();
    for (const CanonicalKey& k : s.keys) {
        if (!divs.contains(k)) {
            throw std::invalid_argument("key " + k.hex() + " is not a boundary divisor of M_" +
                                        to_string(s.signature));
        }
    }
}

/// Components of D_1 ∩ ... ∩ D_k: the k-edge strata whose k delta values are
/// pairwise distinct and equal to the input set.
inline IntersectionReport intersection_components(StrataCatalog& catalog, const DivisorSet& s) {
    require_divisors(catalog, s);
    IntersectionReport report{s, {}, false};
    const DeltaTable& table = catalog.deltas(s.size());
    if (auto it = table.by_divisor_set.find(s.sorted()); it != table.by_divisor_set.end()) {
        const StratumSet& level = catalog.level(s.size());
        for (const CanonicalKey& k : it->second) report.components.push_back(level.graphs.at(k));
    }
    report.nonempty = !report.components.empty();
    return report;
}

inline bool intersect_nonempty(StrataCatalog& catalog, const DivisorSet& s) {
    return intersection_components(catalog, s).nonempty;
}

/// Superset search: is there a stratum of any codimension lying in every
/// divisor of `s`? Agrees with intersect_nonempty under normal crossings.
inline bool lies_in_common_stratum(StrataCatalog& catalog, const DivisorSet& s) {
    require_divisors(catalog, s);
    const auto wanted = s.sorted();
    for (std::size_t k = s.size(); k <= catalog.max_edges(); ++k) {
        for (const auto& [key, ms] : catalog.deltas(k).multiset) {
            if (std::includes(ms.begin(), ms.end(), wanted.begin(), wanted.end())) return true;
        }
    }
    return false;
}

/// Genus-one tree-type graph with n marks -> genus-zero graph with n+2 marks:
/// the genus-one vertex becomes genus zero and gains legs n+1 and n+2.
inline DualGraph sigma(const DualGraph& g) {
    if (total_genus(g) != 1 || !is_tree_type(g)) {
        throw std::invalid_argument("sigma needs a tree-type graph of genus 1");
    }
    VertexId elliptic = 0;
    while (g.genus(elliptic) != 1) ++elliptic;
    std::vector<int> genera(g.genera().begin(), g.genera().end());
    genera[elliptic] = 0;
    std::vector<VertexId> legs(g.leg_vertices().begin(), g.leg_vertices().end());
    legs.push_back(elliptic);
    legs.push_back(elliptic);
    return DualGraph(std::move(genera), {g.edges().begin(), g.edges().end()}, std::move(legs));
}

inline DualGraph sigma_inverse(const DualGraph& h) {
    const std::size_t n = h.mark_count();
    if (total_genus(h) != 0 || n < 2) throw std::invalid_argument("sigma_inverse needs a genus-0 graph with >= 2 marks");
    VertexId v = h.leg(n - 1);
    if (h.leg(n) != v) {
        throw std::invalid_argument("marks " + std::to_string(n - 1) + " and " + std::to_string(n) +
                                    " lie on different vertices");
    }
    std::vector<int> genera(h.genera().begin(), h.genera().end());
    genera[v] = 1;
    std::vector<VertexId> legs(h.leg_vertices().begin(), h.leg_vertices().end() - 2);
    return DualGraph(std::move(genera), {h.edges().begin(), h.edges().end()}, std::move(legs));
}

}  // namespace strata
