#pragma once

// Dual graphs of stable marked curves and the smoothing calculus on them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

using VertexId = std::size_t;
using EdgeId = std::size_t;

/// Unordered vertex pair; stored with a <= b. A loop has a == b.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;

    Edge() = default;
    Edge(VertexId x, VertexId y) : a{std::min(x, y)}, b{std::max(x, y)} {}

    bool is_loop() const { return a == b; }
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// (g, n): arithmetic genus and number of marked points.
struct GnSignature {
    int g = 0;
    int n = 0;

    /// True iff M̄_{g,n} exists, i.e. 2g - 2 + n > 0.
    bool exists() const { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }
    /// Dimension of the moduli space; also the maximal number of edges of a stable graph.
    int dimension() const { return 3 * g - 3 + n; }

    friend auto operator<=>(const GnSignature&, const GnSignature&) = default;
};

inline std::string to_string(GnSignature sig) {
    return "(" + std::to_string(sig.g) + "," + std::to_string(sig.n) + ")";
}

inline void require_exists(GnSignature sig) {
    if (!sig.exists()) {
        throw std::invalid_argument("moduli space M_" + to_string(sig) + " does not exist");
    }
}

/// Genus-decorated connected multigraph with legs labeled 1..n.
///
/// Edge ids are positions in edges(); leg `i` (1-based) sits on leg(i).
/// The constructor validates every structural invariant and throws
/// std::invalid_argument on violation. Stability is a separate predicate.
class DualGraph {
  public:
    DualGraph(std::vector<int> genera, std::vector<Edge> edges, std::vector<VertexId> leg_vertices)
        : genera_{std::move(genera)}, edges_{std::move(edges)}, legs_{std::move(leg_vertices)} {
        validate();
    }

    std::size_t vertex_count() const { return genera_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t mark_count() const { return legs_.size(); }

    int genus(VertexId v) const { return genera_.at(v); }
    std::span<const int> genera() const { return genera_; }

    const Edge& edge(EdgeId e) const {
        if (e >= edges_.size()) {
            throw std::out_of_range("edge id " + std::to_string(e) + " out of range");
        }
        return edges_[e];
    }
    std::span<const Edge> edges() const { return edges_; }

    /// Vertex carrying leg `mark` (1-based).
    VertexId leg(std::size_t mark) const {
        if (mark == 0 || mark > legs_.size()) {
            throw std::out_of_range("mark " + std::to_string(mark) + " out of range");
        }
        return legs_[mark - 1];
    }
    /// leg_vertices()[i] is the vertex of mark i+1.
    std::span<const VertexId> leg_vertices() const { return legs_; }

    /// Special points at v: legs plus edge-ends, a loop counting twice.
    std::size_t valence(VertexId v) const {
        std::size_t val = 0;
        for (const Edge& e : edges_) {
            val += (e.a == v) + (e.b == v);
        }
        return val + static_cast<std::size_t>(std::count(legs_.begin(), legs_.end(), v));
    }

    /// Marks on v in increasing order.
    std::vector<std::size_t> marks_at(VertexId v) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < legs_.size(); ++i) {
            if (legs_[i] == v) out.push_back(i + 1);
        }
        return out;
    }

    /// Labeled equality (same ids), not isomorphism.
    friend bool operator==(const DualGraph&, const DualGraph&) = default;

  private:
    void validate() const {
        const std::size_t nv = genera_.size();
        if (nv == 0) throw std::invalid_argument("dual graph needs at least one vertex");
        for (int gv : genera_) {
            if (gv < 0) throw std::invalid_argument("negative vertex genus");
        }
        for (const Edge& e : edges_) {
            if (e.b >= nv) throw std::invalid_argument("edge endpoint out of range");
        }
        for (VertexId v : legs_) {
            if (v >= nv) throw std::invalid_argument("leg attached to missing vertex");
        }
        // connectivity
        std::vector<VertexId> parent(nv);
        std::iota(parent.begin(), parent.end(), VertexId{0});
        auto find = [&](VertexId x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        std::size_t components = nv;
        for (const Edge& e : edges_) {
            VertexId ra = find(e.a), rb = find(e.b);
            if (ra != rb) {
                parent[ra] = rb;
                --components;
            }
        }
        if (components != 1) throw std::invalid_argument("dual graph is disconnected");
    }

    std::vector<int> genera_;
    std::vector<Edge> edges_;
    std::vector<VertexId> legs_;
};

/// Arithmetic genus: sum of vertex genera plus first Betti number.
inline int total_genus(const DualGraph& g) {
    int sum = std::accumulate(g.genera().begin(), g.genera().end(), 0);
    return sum + static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) + 1;
}

inline GnSignature signature_of(const DualGraph& g) {
    return {total_genus(g), static_cast<int>(g.mark_count())};
}

inline bool is_stable_vertex(int genus, std::size_t valence) {
    if (genus == 0) return valence >= 3;
    if (genus == 1) return valence >= 1;
    return true;
}

inline bool is_stable(const DualGraph& g) {
    std::vector<std::size_t> val(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
        ++val[e.a];
        ++val[e.b];
    }
    for (VertexId v : g.leg_vertices()) ++val[v];
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!is_stable_vertex(g.genus(v), val[v])) return false;
    }
    return true;
}

/// Smooths every edge in `subset` at once. Surviving edges keep their relative
/// order; merged vertices are numbered by their smallest original vertex id.
inline DualGraph smooth_set(const DualGraph& g, std::span<const EdgeId> subset) {
    const std::size_t nv = g.vertex_count();
    std::vector<bool> smoothed(g.edge_count(), false);
    for (EdgeId e : subset) {
        if (e >= g.edge_count()) {
            throw std::invalid_argument("invalid edge id " + std::to_string(e));
        }
        smoothed[e] = true;
    }

    std::vector<VertexId> parent(nv);
    std::iota(parent.begin(), parent.end(), VertexId{0});
    auto find = [&](VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!smoothed[e]) continue;
        VertexId ra = find(g.edge(e).a), rb = find(g.edge(e).b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    std::vector<VertexId> new_id(nv, nv);
    std::size_t count = 0;
    for (VertexId v = 0; v < nv; ++v) {
        VertexId r = find(v);
        if (new_id[r] == nv) new_id[r] = count++;
        new_id[v] = new_id[r];
    }

    // genus(component) = sum of genera + smoothed edges inside - (|component| - 1)
    std::vector<int> genera(count, 0);
    std::vector<int> sizes(count, 0);
    for (VertexId v = 0; v < nv; ++v) {
        genera[new_id[v]] += g.genus(v);
        ++sizes[new_id[v]];
    }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (smoothed[e]) {
            ++genera[new_id[ed.a]];
        } else {
            edges.emplace_back(new_id[ed.a], new_id[ed.b]);
        }
    }
    for (std::size_t c = 0; c < count; ++c) genera[c] -= sizes[c] - 1;

    std::vector<VertexId> legs;
    legs.reserve(g.mark_count());
    for (VertexId v : g.leg_vertices()) legs.push_back(new_id[v]);
    return DualGraph(std::move(genera), std::move(edges), std::move(legs));
}

inline DualGraph smooth(const DualGraph& g, EdgeId e) {
    const EdgeId one[] = {e};
    return smooth_set(g, one);
}

/// The one-edge graph obtained by smoothing every edge except `e`.
inline DualGraph delta(const DualGraph& g, EdgeId e) {
    if (e >= g.edge_count()) throw std::invalid_argument("invalid edge id " + std::to_string(e));
    std::vector<EdgeId> rest;
    rest.reserve(g.edge_count() - 1);
    for (EdgeId f = 0; f < g.edge_count(); ++f) {
        if (f != e) rest.push_back(f);
    }
    return smooth_set(g, rest);
}

/// Compact human-readable form, e.g. `[1{1,2} 0{}] 0-1 1-1`.
inline std::string describe(const DualGraph& g) {
    std::ostringstream os;
    os << '[';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v) os << ' ';
        os << g.genus(v) << '{';
        auto marks = g.marks_at(v);
        for (std::size_t i = 0; i < marks.size(); ++i) os << (i ? "," : "") << marks[i];
        os << '}';
    }
    os << ']';
    for (const Edge& e : g.edges()) os << ' ' << e.a << '-' << e.b;
    return os.str();
}

}  // namespace strata
