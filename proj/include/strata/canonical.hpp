#pragma once

// Canonical labeling of dual graphs.
//
// Vertices are colored by (genus, valence, loop count, leg labels) and the
// coloring is refined to an equitable ordered partition. Non-discrete
// partitions are resolved by individualizing each vertex of the first
// non-singleton cell and recursing; the key is the smallest encoding over all
// leaves of that search tree. Legs are fixed pointwise, so any vertex carrying
// a leg is a singleton from the start and the trees stay tiny.

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <tuple>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strata/dual_graph.hpp"

namespace strata {

/// Byte encoding of an isomorphism class:
/// [V, genera..., E, (lo, hi) per edge sorted..., n, vertex of each mark...].
/// Ordered lexicographically on bytes; serialized as lowercase hex.
class CanonicalKey {
  public:
    CanonicalKey() = default;
    explicit CanonicalKey(std::vector<std::uint8_t> bytes) : bytes_{std::move(bytes)} {}

    const std::vector<std::uint8_t>& bytes() const { return bytes_; }
    bool empty() const { return bytes_.empty(); }

    std::string hex() const {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve(bytes_.size() * 2);
        for (std::uint8_t b : bytes_) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 0xf]);
        }
        return out;
    }

    static CanonicalKey from_hex(std::string_view text) {
        auto nibble = [](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            return -1;
        };
        if (text.empty() || text.size() % 2 != 0) {
            throw std::invalid_argument("malformed canonical key '" + std::string(text) + "'");
        }
        std::vector<std::uint8_t> bytes;
        for (std::size_t i = 0; i < text.size(); i += 2) {
            int hi = nibble(text[i]), lo = nibble(text[i + 1]);
            if (hi < 0 || lo < 0) {
                throw std::invalid_argument("malformed canonical key '" + std::string(text) + "'");
            }
            bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
        }
        return CanonicalKey(std::move(bytes));
    }

    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;

  private:
    std::vector<std::uint8_t> bytes_;
};

struct CanonicalForm {
    CanonicalKey key;
    /// position[v] is the canonical index of vertex v.
    std::vector<VertexId> position;
};

namespace detail {

inline std::uint8_t narrow_byte(std::size_t x) {
    if (x > 255) throw std::invalid_argument("dual graph too large for canonical encoding");
    return static_cast<std::uint8_t>(x);
}

class Canonicalizer {
  public:
    explicit Canonicalizer(const DualGraph& g) : g_{g}, n_{g.vertex_count()}, adjacency_(n_), loops_(n_, 0) {
        for (const Edge& e : g.edges()) {
            if (e.is_loop()) {
                ++loops_[e.a];
            } else {
                adjacency_[e.a].push_back(e.b);
                adjacency_[e.b].push_back(e.a);
            }
        }
    }

    CanonicalForm run() {
        using Invariant = std::tuple<int, std::size_t, std::size_t, std::vector<std::size_t>>;
        std::vector<Invariant> inv(n_);
        for (VertexId v = 0; v < n_; ++v) {
            inv[v] = {g_.genus(v), g_.valence(v), loops_[v], g_.marks_at(v)};
        }
        search(refine(rank(inv)));
        return {CanonicalKey(std::move(best_)), std::move(best_position_)};
    }

  private:
    template <typename T>
    std::vector<std::size_t> rank(const std::vector<T>& sig) const {
        std::vector<T> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::size_t> colors(n_);
        for (VertexId v = 0; v < n_; ++v) {
            colors[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) -
                                                 sorted.begin());
        }
        return colors;
    }

    static std::size_t cell_count(const std::vector<std::size_t>& colors) {
        return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    }

    // Refines until the partition is equitable. New colors sort first by the
    // old color, so the ordered partition only ever splits.
    std::vector<std::size_t> refine(std::vector<std::size_t> colors) const {
        using Signature = std::pair<std::size_t, std::vector<std::size_t>>;
        std::size_t cells = cell_count(colors);
        while (cells < n_) {
            std::vector<Signature> sig(n_);
            for (VertexId v = 0; v < n_; ++v) {
                std::vector<std::size_t> nb;
                nb.reserve(adjacency_[v].size());
                for (VertexId u : adjacency_[v]) nb.push_back(colors[u]);
                std::sort(nb.begin(), nb.end());
                sig[v] = {colors[v], std::move(nb)};
            }
            auto next = rank(sig);
            std::size_t next_cells = cell_count(next);
            if (next_cells == cells) break;
            colors = std::move(next);
            cells = next_cells;
        }
        return colors;
    }

    std::vector<std::uint8_t> encode(const std::vector<std::size_t>& position) const {
        std::vector<std::uint8_t> out;
        out.reserve(3 + n_ + 2 * g_.edge_count() + g_.mark_count());
        out.push_back(narrow_byte(n_));
        std::vector<int> genera(n_);
        for (VertexId v = 0; v < n_; ++v) genera[position[v]] = g_.genus(v);
        for (int gv : genera) out.push_back(narrow_byte(static_cast<std::size_t>(gv)));
        std::vector<Edge> edges;
        edges.reserve(g_.edge_count());
        for (const Edge& e : g_.edges()) edges.emplace_back(position[e.a], position[e.b]);
        std::sort(edges.begin(), edges.end());
        out.push_back(narrow_byte(edges.size()));
        for (const Edge& e : edges) {
            out.push_back(narrow_byte(e.a));
            out.push_back(narrow_byte(e.b));
        }
        out.push_back(narrow_byte(g_.mark_count()));
        for (VertexId v : g_.leg_vertices()) out.push_back(narrow_byte(position[v]));
        return out;
    }

    void search(const std::vector<std::size_t>& colors) {
        const std::size_t cells = cell_count(colors);
        if (cells == n_) {
            auto enc = encode(colors);
            if (best_.empty() || enc < best_) {
                best_ = std::move(enc);
                best_position_ = colors;
            }
            return;
        }
        // first non-singleton cell
        std::vector<std::size_t> size(cells, 0);
        for (std::size_t c : colors) ++size[c];
        std::size_t target = 0;
        while (size[target] < 2) ++target;

        for (VertexId v = 0; v < n_; ++v) {
            if (colors[v] != target) continue;
            std::vector<std::size_t> split(n_);
            for (VertexId u = 0; u < n_; ++u) {
                std::size_t c = colors[u];
                split[u] = (c < target || u == v) ? c : c + 1;
            }
            search(refine(std::move(split)));
        }
    }

    const DualGraph& g_;
    std::size_t n_;
    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<std::size_t> loops_;
    std::vector<std::uint8_t> best_;
    std::vector<std::size_t> best_position_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const DualGraph& g) { return detail::Canonicalizer(g).run(); }

inline CanonicalKey canonical_key(const DualGraph& g) { return canonical_form(g).key; }

/// Decodes a key back into its canonical representative.
inline DualGraph graph_from_key(const CanonicalKey& key) {
    const auto& b = key.bytes();
    std::size_t pos = 0;
    auto next = [&]() -> std::size_t {
        if (pos >= b.size()) throw std::invalid_argument("truncated canonical key");
        return b[pos++];
    };
    std::size_t nv = next();
    std::vector<int> genera(nv);
    for (auto& gv : genera) gv = static_cast<int>(next());
    std::size_t ne = next();
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < ne; ++i) {
        std::size_t a = next();
        std::size_t c = next();
        edges.emplace_back(a, c);
    }
    std::size_t nm = next();
    std::vector<VertexId> legs(nm);
    for (auto& v : legs) v = next();
    if (pos != b.size()) throw std::invalid_argument("trailing bytes in canonical key");
    DualGraph g(std::move(genera), std::move(edges), std::move(legs));
    if (canonical_key(g) != key) throw std::invalid_argument("key is not in canonical form");
    return g;
}

/// Renumbers vertices by `position` and sorts the edge list.
inline DualGraph relabel(const DualGraph& g, std::span<const VertexId> position) {
    std::vector<int> genera(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) genera[position[v]] = g.genus(v);
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const Edge& e : g.edges()) edges.emplace_back(position[e.a], position[e.b]);
    std::sort(edges.begin(), edges.end());
    std::vector<VertexId> legs;
    legs.reserve(g.mark_count());
    for (VertexId v : g.leg_vertices()) legs.push_back(position[v]);
    return DualGraph(std::move(genera), std::move(edges), std::move(legs));
}

/// The canonical representative: vertices renumbered canonically, edges sorted.
inline DualGraph canonical_graph(const DualGraph& g) { return relabel(g, canonical_form(g).position); }

inline bool is_isomorphic(const DualGraph& g, const DualGraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() ||
        g.mark_count() != h.mark_count()) {
        return false;
    }
    return canonical_key(g) == canonical_key(h);
}

/// Sorted multiset {key(delta(G, e)) : e in E(G)}.
inline std::vector<CanonicalKey> delta_multiset(const DualGraph& g) {
    if (g.edge_count() == 0) throw std::invalid_argument("delta multiset of a graph without edges");
    std::vector<CanonicalKey> out;
    out.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) out.push_back(canonical_key(delta(g, e)));
    std::sort(out.begin(), out.end());
    return out;
}

/// Distinct values of delta_multiset: the divisors containing the stratum of G.
inline std::vector<CanonicalKey> delta_support(const DualGraph& g) {
    auto out = delta_multiset(g);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// True iff smoothing some subset of E(G) yields a graph isomorphic to H.
inline bool is_degeneration(const DualGraph& g, const DualGraph& h) {
    if (g.mark_count() != h.mark_count() || total_genus(g) != total_genus(h) ||
        g.edge_count() < h.edge_count() || g.vertex_count() < h.vertex_count()) {
        return false;
    }
    const std::size_t ne = g.edge_count();
    const std::size_t drop = ne - h.edge_count();
    const CanonicalKey target = canonical_key(h);
    if (drop == 0) return canonical_key(g) == target;

    std::vector<EdgeId> subset(drop);
    std::iota(subset.begin(), subset.end(), EdgeId{0});
    while (true) {
        DualGraph s = smooth_set(g, subset);
        if (s.vertex_count() == h.vertex_count() && canonical_key(s) == target) return true;
        // next combination in lexicographic order
        std::size_t i = drop;
        while (i > 0 && subset[i - 1] == ne - drop + i - 1) --i;
        if (i == 0) return false;
        ++subset[i - 1];
        for (std::size_t j = i; j < drop; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace strata

template <>
struct std::hash<strata::CanonicalKey> {
    std::size_t operator()(const strata::CanonicalKey& k) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto b : k.bytes()) h = (h ^ b) * 1099511628211ULL;
        return h;
    }
};
