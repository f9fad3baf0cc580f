#pragma once

// Curated reproduction checks: the worked examples and counterexample
// families, each reduced to a pass/fail line.

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "strata/complex.hpp"

namespace strata {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail {

inline bool among(const std::vector<DualGraph>& components, const DualGraph& g) {
    for (const DualGraph& c : components) {
        if (is_isomorphic(c, g)) return true;
    }
    return false;
}

inline std::string join_counts(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t x : xs) out += (out.empty() ? "" : " ") + std::to_string(x);
    return out;
}

inline bool pinwheel_check(int n, const EnumerationOptions& opts, std::string& detail) {
    StrataCatalog catalog({2, n}, opts);
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            IntersectionReport r =
                intersection_components(catalog, make_divisor_set({2, n}, {pinwheel_divisor(n, i), pinwheel_divisor(n, j)}));
            ok = ok && r.nonempty && among(r.components, pinwheel_pair_graph(n, i, j));
        }
    }
    bool triple_empty = !intersect_nonempty(catalog, make_divisor_set({2, n}, {pinwheel_divisor(n, 1), pinwheel_divisor(n, 2),
                                                                                pinwheel_divisor(n, 3)}));
    detail = std::string("pairs ") + (ok ? "meet" : "FAIL") + ", triple " + (triple_empty ? "empty" : "NONEMPTY");
    return ok && triple_empty;
}

inline bool high_genus_check(int g, int n, const EnumerationOptions& opts, std::string& detail) {
    StrataCatalog catalog({g, n}, opts);
    auto d = high_genus_divisors(g, n);
    auto pairs = high_genus_pair_graphs(g, n);
    const std::array<std::pair<int, int>, 3> which{{{0, 1}, {0, 2}, {1, 2}}};
    bool ok = true;
    for (std::size_t p = 0; p < 3; ++p) {
        IntersectionReport r =
            intersection_components(catalog, make_divisor_set({g, n}, {d[which[p].first], d[which[p].second]}));
        ok = ok && among(r.components, pairs[p]);
    }
    bool triple_empty = !intersect_nonempty(catalog, high_genus_triple(g, n));
    detail = std::string("pairs ") + (ok ? "match" : "FAIL") + ", triple " + (triple_empty ? "empty" : "NONEMPTY");
    return ok && triple_empty;
}

}  // namespace detail

inline std::vector<SuiteCheck> reproduction_suite(const EnumerationOptions& opts = {}) {
    std::vector<std::pair<std::string, std::function<bool(std::string&)>>> checks;

    checks.emplace_back("(2,2) has four boundary divisors", [&](std::string& d) {
        auto count = divisors({2, 2}, opts).size();
        d = std::to_string(count);
        return count == 4;
    });
    checks.emplace_back("(2,2) f-vector is 4 5 2 and the complex is flag", [&](std::string& d) {
        StrataCatalog catalog({2, 2}, opts);
        BoundaryComplex c = boundary_complex(catalog);
        bool flag = is_flag(c).flag;
        d = detail::join_counts(f_vector(c)) + (flag ? ", flag" : ", not flag");
        return f_vector(c) == std::vector<std::size_t>{4, 5, 2} && flag;
    });
    checks.emplace_back("(2,2) has exactly one non-edge", [&](std::string& d) {
        StrataCatalog catalog({2, 2}, opts);
        BoundaryComplex c = boundary_complex(catalog);
        std::vector<Face> missing;
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < c.vertices.size(); ++j) {
                if (!c.is_face({i, j})) missing.push_back({i, j});
            }
        }
        d = std::to_string(missing.size()) + " non-edge(s)";
        for (const Face& f : missing) {
            d += ": " + describe(graph_from_key(c.vertices[f[0]])) + " / " + describe(graph_from_key(c.vertices[f[1]]));
        }
        return missing.size() == 1;
    });
    checks.emplace_back("(2,3) loop divisor meets 1{1,2,3}-1 in two strata", [&](std::string& d) {
        StrataCatalog catalog({2, 3}, opts);
        IntersectionReport r = intersection_components(
            catalog, make_divisor_set({2, 3}, {DualGraph({1}, {Edge(0, 0)}, {0, 0, 0}), DualGraph({1, 1}, {Edge(0, 1)}, {0, 0, 1})}));
        d = std::to_string(r.components.size()) + " component(s)";
        return r.components.size() == 2 &&
               detail::among(r.components, DualGraph({1, 0}, {Edge(0, 1), Edge(1, 1)}, {1, 1, 0})) &&
               detail::among(r.components, DualGraph({1, 0}, {Edge(0, 1), Edge(1, 1)}, {0, 0, 1}));
    });
    checks.emplace_back("(1,2) two-edge banana has a single delta value", [&](std::string& d) {
        auto sup = delta_support(DualGraph({0, 0}, {Edge(0, 1), Edge(0, 1)}, {0, 1}));
        d = "support size " + std::to_string(sup.size());
        return sup.size() == 1;
    });
    for (int n : {3, 4}) {
        checks.emplace_back("(2," + std::to_string(n) + ") pinwheel divisors meet pairwise, not all together",
                            [&, n](std::string& d) { return detail::pinwheel_check(n, opts, d); });
    }
    checks.emplace_back("(2,3) complex is not flag", [&](std::string& d) {
        StrataCatalog catalog({2, 3}, opts);
        FlagResult r = is_flag(boundary_complex(catalog));
        d = r.witness ? "witness of size " + std::to_string(r.witness->clique.size()) : "no witness";
        return !r.flag;
    });
    for (int g : {3, 4}) {
        checks.emplace_back("(" + std::to_string(g) + ",2) D1 D2 D3 meet pairwise, not all together",
                            [&, g](std::string& d) { return detail::high_genus_check(g, 2, opts, d); });
    }
    checks.emplace_back("universal degeneration lies in every divisor for n <= 1", [&](std::string& d) {
        for (GnSignature sig : {GnSignature{2, 0}, GnSignature{3, 0}, GnSignature{1, 1}, GnSignature{2, 1}, GnSignature{3, 1}}) {
            DualGraph u = universal_degeneration(sig);
            for (const auto& [key, div] : divisors(sig, opts).graphs) {
                if (!is_degeneration(u, div)) {
                    d = to_string(sig) + " misses " + describe(div);
                    return false;
                }
            }
        }
        d = "5 signatures";
        return true;
    });

    std::vector<SuiteCheck> out;
    for (auto& [name, fn] : checks) {
        SuiteCheck c;
        c.name = name;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.passed = fn(c.detail);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = e.what();
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace strata
