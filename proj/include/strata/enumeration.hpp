#pragma once

// Enumeration of stable dual graphs by inverse smoothing.
//
// Level k of a signature is built from level k-1 by the two moves that undo a
// smoothing: splitting a vertex along a new edge, or trading one unit of
// vertex genus for a loop. Every stable k-edge graph smooths to a stable
// (k-1)-edge graph, so starting from the smooth curve reaches everything.

#include <bit>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "strata/canonical.hpp"
#include "strata/json_io.hpp"

namespace strata {

inline constexpr const char* kGeneratorVersion = "inverse-smoothing/1";
inline constexpr const char* kStratumSetSchema = "stratumset/1";

/// Raised when a level would hold more than EnumerationOptions::max_graphs graphs.
class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
    std::size_t max_graphs = 1'000'000;
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;
};

/// One canonical representative per isomorphism class of stable graphs with
/// signature (g, n) and exactly `edge_count` edges, keyed and ordered by key.
struct StratumSet {
    GnSignature signature;
    std::size_t edge_count = 0;
    std::map<CanonicalKey, DualGraph> graphs;
    std::string generator_version = kGeneratorVersion;

    std::size_t size() const { return graphs.size(); }
    bool contains(const CanonicalKey& key) const { return graphs.count(key) != 0; }
};

/// The smooth curve: one vertex of genus g carrying every leg.
inline DualGraph smooth_point(GnSignature sig) {
    require_exists(sig);
    return DualGraph({sig.g}, {}, std::vector<VertexId>(static_cast<std::size_t>(sig.n), 0));
}

/// All stable graphs with one more edge that smooth back to `g`, possibly with
/// isomorphic repeats. Unstable children are dropped as soon as they are built.
inline std::vector<DualGraph> inverse_smoothings(const DualGraph& g) {
    std::vector<DualGraph> out;
    const std::size_t nv = g.vertex_count();
    std::vector<int> genera(g.genera().begin(), g.genera().end());
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::vector<VertexId> legs(g.leg_vertices().begin(), g.leg_vertices().end());

    // genus -> loop
    for (VertexId v = 0; v < nv; ++v) {
        if (genera[v] == 0) continue;
        auto gen = genera;
        --gen[v];
        auto ed = edges;
        ed.emplace_back(v, v);
        if (is_stable_vertex(gen[v], g.valence(v) + 2)) out.emplace_back(std::move(gen), std::move(ed), legs);
    }

    // vertex split: each half-edge at v goes to v (side 0) or the new vertex nv (side 1)
    struct HalfEdge {
        bool is_leg;
        std::size_t index;  // mark index or edge id
        int end;            // which end of the edge (0 = a, 1 = b)
    };
    for (VertexId v = 0; v < nv; ++v) {
        std::vector<HalfEdge> half;
        for (std::size_t m = 0; m < legs.size(); ++m) {
            if (legs[m] == v) half.push_back({true, m, 0});
        }
        for (EdgeId e = 0; e < edges.size(); ++e) {
            if (edges[e].a == v) half.push_back({false, e, 0});
            if (edges[e].b == v) half.push_back({false, e, 1});
        }
        const std::size_t h = half.size();
        if (h > 20) throw std::invalid_argument("vertex valence too large to split");
        const int gv = genera[v];
        // the first half-edge stays on v; the mirrored split is isomorphic
        for (unsigned long mask = 0; mask < (1UL << h); mask += (h > 0 ? 2 : 1)) {
            std::size_t on_new = static_cast<std::size_t>(std::popcount(mask));
            for (int g_new = 0; g_new <= gv; ++g_new) {
                // +1 on each side for the new edge
                if (!is_stable_vertex(gv - g_new, h - on_new + 1) || !is_stable_vertex(g_new, on_new + 1)) continue;
                auto gen = genera;
                gen[v] = gv - g_new;
                gen.push_back(g_new);
                std::vector<VertexId> ends_a(edges.size()), ends_b(edges.size());
                for (EdgeId e = 0; e < edges.size(); ++e) {
                    ends_a[e] = edges[e].a;
                    ends_b[e] = edges[e].b;
                }
                auto lg = legs;
                for (std::size_t i = 0; i < h; ++i) {
                    if (!((mask >> i) & 1UL)) continue;
                    const HalfEdge& he = half[i];
                    if (he.is_leg) {
                        lg[he.index] = nv;
                    } else if (he.end == 0) {
                        ends_a[he.index] = nv;
                    } else {
                        ends_b[he.index] = nv;
                    }
                }
                std::vector<Edge> ed;
                ed.reserve(edges.size() + 1);
                for (EdgeId e = 0; e < edges.size(); ++e) ed.emplace_back(ends_a[e], ends_b[e]);
                ed.emplace_back(v, nv);
                out.emplace_back(std::move(gen), std::move(ed), std::move(lg));
            }
        }
    }
    return out;
}

namespace detail {

inline std::map<CanonicalKey, DualGraph> grow_level(const StratumSet& prev, const EnumerationOptions& opts) {
    std::vector<const DualGraph*> parents;
    parents.reserve(prev.graphs.size());
    for (const auto& [key, g] : prev.graphs) parents.push_back(&g);

    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(opts.threads, parents.size()));
    std::vector<std::map<CanonicalKey, DualGraph>> partial(workers);
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](std::size_t w) {
        try {
            auto& local = partial[w];
            for (std::size_t i = w; i < parents.size(); i += workers) {
                for (DualGraph& child : inverse_smoothings(*parents[i])) {
                    CanonicalForm form = canonical_form(child);
                    if (local.count(form.key)) continue;
                    local.emplace(std::move(form.key), relabel(child, form.position));
                    if (local.size() > opts.max_graphs) {
                        throw BudgetExceeded("level " + std::to_string(prev.edge_count + 1) + " of " +
                                             to_string(prev.signature) + " exceeds " +
                                             std::to_string(opts.max_graphs) + " graphs");
                    }
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    auto merged = std::move(partial[0]);
    for (std::size_t w = 1; w < workers; ++w) merged.merge(partial[w]);
    if (merged.size() > opts.max_graphs) {
        throw BudgetExceeded("level " + std::to_string(prev.edge_count + 1) + " of " + to_string(prev.signature) +
                             " exceeds " + std::to_string(opts.max_graphs) + " graphs");
    }
    return merged;
}

}  // namespace detail

/// Builds level k+1 from level k.
inline StratumSet next_level(const StratumSet& prev, const EnumerationOptions& opts = {}) {
    StratumSet out;
    out.signature = prev.signature;
    out.edge_count = prev.edge_count + 1;
    out.graphs = detail::grow_level(prev, opts);
    return out;
}

// ---------------------------------------------------------------------------
// Disk cache: <dir>/g<g>n<n>/k<k>.json

inline std::filesystem::path cache_file(const std::filesystem::path& dir, GnSignature sig, std::size_t k) {
    return dir / ("g" + std::to_string(sig.g) + "n" + std::to_string(sig.n)) / ("k" + std::to_string(k) + ".json");
}

inline Json to_json(const StratumSet& s) {
    Json out = Json::object();
    out["schema"] = kStratumSetSchema;
    out["generator_version"] = s.generator_version;
    out["g"] = s.signature.g;
    out["n"] = s.signature.n;
    out["k"] = s.edge_count;
    out["graphs"] = Json::array();
    for (const auto& [key, g] : s.graphs) out["graphs"].push_back(to_json(g));
    return out;
}

/// Parses a stratum set document; keys are recomputed, not trusted.
inline StratumSet stratum_set_from_json(const Json& j) {
    if (j.value("schema", "") != kStratumSetSchema) throw std::invalid_argument("not a stratumset/1 document");
    StratumSet s;
    s.signature = {j.at("g").get<int>(), j.at("n").get<int>()};
    s.edge_count = j.at("k").get<std::size_t>();
    s.generator_version = j.at("generator_version").get<std::string>();
    for (const auto& gj : j.at("graphs")) {
        DualGraph g = graph_from_json(gj);
        if (signature_of(g) != s.signature || g.edge_count() != s.edge_count) {
            throw std::invalid_argument("graph does not belong to the declared (g,n,k)");
        }
        CanonicalForm form = canonical_form(g);
        s.graphs.emplace(std::move(form.key), relabel(g, form.position));
    }
    return s;
}

/// Returns the cached level if present, readable and produced by the current generator.
inline std::optional<StratumSet> load_cached(const std::filesystem::path& dir, GnSignature sig, std::size_t k) {
    const auto path = cache_file(dir, sig, k);
    std::ifstream in(path);
    if (!in) return std::nullopt;
    try {
        StratumSet s = stratum_set_from_json(Json::parse(in));
        if (s.generator_version != kGeneratorVersion || s.signature != sig || s.edge_count != k) return std::nullopt;
        for (const auto& [key, g] : s.graphs) {
            if (!is_stable(g)) return std::nullopt;
        }
        return s;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void store_cached(const std::filesystem::path& dir, const StratumSet& s) {
    const auto path = cache_file(dir, s.signature, s.edge_count);
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << to_json(s).dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------

/// Per-level table of delta multisets.
struct DeltaTable {
    /// graph key -> sorted delta multiset
    std::map<CanonicalKey, std::vector<CanonicalKey>> multiset;
    /// sorted set of divisors -> graphs whose delta values are exactly that set, pairwise distinct
    std::map<std::vector<CanonicalKey>, std::vector<CanonicalKey>> by_divisor_set;
};

/// Memoized strata of one signature. Levels are generated on first use (or
/// read from the cache directory) and never change afterwards, so returned
/// references stay valid for the catalog's lifetime. Safe to share between threads.
class StrataCatalog {
  public:
    explicit StrataCatalog(GnSignature sig, EnumerationOptions opts = {}) : sig_{sig}, opts_{std::move(opts)} {
        require_exists(sig_);
        if (opts_.max_graphs == 0) throw std::invalid_argument("max_graphs must be positive");
    }

    GnSignature signature() const { return sig_; }
    const EnumerationOptions& options() const { return opts_; }
    std::size_t max_edges() const { return static_cast<std::size_t>(sig_.dimension()); }

    /// Stable graphs with exactly k edges, 0 <= k <= 3g-3+n.
    const StratumSet& level(std::size_t k) {
        std::lock_guard lock(mutex_);
        return level_locked(k);
    }

    /// One-edge graphs; empty when the moduli space is a point.
    const StratumSet& divisors() {
        if (max_edges() == 0) {
            std::lock_guard lock(mutex_);
            if (!empty_divisors_) {
                empty_divisors_ = std::make_unique<StratumSet>();
                empty_divisors_->signature = sig_;
                empty_divisors_->edge_count = 1;
            }
            return *empty_divisors_;
        }
        return level(1);
    }

    const DeltaTable& deltas(std::size_t k) {
        if (k == 0) throw std::invalid_argument("level 0 has no edges");
        const StratumSet& graphs = level(k);
        std::lock_guard lock(mutex_);
        if (auto it = deltas_.find(k); it != deltas_.end()) return it->second;
        DeltaTable table;
        for (const auto& [key, g] : graphs.graphs) {
            auto ms = delta_multiset(g);
            if (std::adjacent_find(ms.begin(), ms.end()) == ms.end()) table.by_divisor_set[ms].push_back(key);
            table.multiset.emplace(key, std::move(ms));
        }
        return deltas_.emplace(k, std::move(table)).first->second;
    }

  private:
    const StratumSet& level_locked(std::size_t k) {
        if (k > max_edges()) {
            throw std::invalid_argument("edge count " + std::to_string(k) + " exceeds dimension " +
                                        std::to_string(max_edges()) + " of M_" + to_string(sig_));
        }
        if (auto it = levels_.find(k); it != levels_.end()) return it->second;
        StratumSet s;
        if (k == 0) {
            s.signature = sig_;
            DualGraph g = smooth_point(sig_);
            s.graphs.emplace(canonical_key(g), g);
        } else if (auto cached = opts_.cache_dir ? load_cached(*opts_.cache_dir, sig_, k) : std::nullopt) {
            s = std::move(*cached);
        } else {
            s = next_level(level_locked(k - 1), opts_);
            if (opts_.cache_dir) store_cached(*opts_.cache_dir, s);
        }
        return levels_.emplace(k, std::move(s)).first->second;
    }

    GnSignature sig_;
    EnumerationOptions opts_;
    std::mutex mutex_;
    std::map<std::size_t, StratumSet> levels_;
    std::map<std::size_t, DeltaTable> deltas_;
    std::unique_ptr<StratumSet> empty_divisors_;
};

inline void require_edge_range(GnSignature sig, std::size_t k) {
    require_exists(sig);
    if (k < 1 || k > static_cast<std::size_t>(std::max(0, sig.dimension()))) {
        throw std::invalid_argument("edge count " + std::to_string(k) + " outside 1.." +
                                    std::to_string(sig.dimension()) + " for M_" + to_string(sig));
    }
}

/// All stable graphs of signature `sig` with exactly k edges, 1 <= k <= 3g-3+n.
inline StratumSet strata(GnSignature sig, std::size_t k, const EnumerationOptions& opts = {}) {
    require_edge_range(sig, k);
    StrataCatalog catalog(sig, opts);
    return catalog.level(k);
}

inline StratumSet divisors(GnSignature sig, const EnumerationOptions& opts = {}) {
    StrataCatalog catalog(sig, opts);
    return catalog.divisors();
}

inline std::size_t count_strata(GnSignature sig, std::size_t k, const EnumerationOptions& opts = {}) {
    return strata(sig, k, opts).size();
}

}  // namespace strata
