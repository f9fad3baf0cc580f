// strata: command-line front end for the boundary-strata engine.
//
// Exit codes: 0 success / nonempty / flag, 1 definitive negative,
// 2 usage or invalid input, 3 resource (budget, I/O).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "strata/strata.hpp"

namespace {

using namespace strata;

enum Exit : int { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string g, n;
    std::optional<std::size_t> k;
    std::optional<std::size_t> max_dim;
    std::string cache_dir;
    std::size_t max_graphs = 1'000'000;
    std::string format = "text";
    std::string threads = "1";
    std::vector<std::string> inputs;
    bool skip_over_budget = false;
};

int parse_int(const std::string& s, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw UsageError(std::string("bad value for ") + what + ": '" + s + "'");
    return v;
}

std::pair<int, int> parse_range(const std::string& s, const char* what) {
    if (s.empty()) throw UsageError(std::string("missing ") + what);
    auto dash = s.find('-', 1);
    if (dash == std::string::npos) {
        int v = parse_int(s, what);
        return {v, v};
    }
    int lo = parse_int(s.substr(0, dash), what), hi = parse_int(s.substr(dash + 1), what);
    if (lo > hi) throw UsageError(std::string("empty range for ") + what);
    return {lo, hi};
}

GnSignature signature(const Config& cfg) {
    if (cfg.g.empty() || cfg.n.empty()) throw UsageError("--g and --n are required");
    GnSignature sig{parse_int(cfg.g, "--g"), parse_int(cfg.n, "--n")};
    if (!sig.exists()) throw UsageError("M(g,n) does not exist for " + to_string(sig) + " (need 2g-2+n > 0)");
    return sig;
}

EnumerationOptions options(const Config& cfg) {
    EnumerationOptions o;
    o.max_graphs = cfg.max_graphs;
    if (cfg.threads == "auto") {
        o.threads = std::max(1u, std::thread::hardware_concurrency());
    } else {
        int t = parse_int(cfg.threads, "--threads");
        if (t < 1) throw UsageError("--threads must be positive or 'auto'");
        o.threads = static_cast<unsigned>(t);
    }
    if (!cfg.cache_dir.empty()) {
        o.cache_dir = cfg.cache_dir;
    } else if (const char* env = std::getenv("STRATA_CACHE_DIR"); env && *env) {
        o.cache_dir = env;
    }
    return o;
}

bool json_out(const Config& cfg) { return cfg.format == "json"; }

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed) {
        if (cfg.format == f) return;
    }
    throw UsageError("--format " + cfg.format + " is not available for this command");
}

std::string key_list(const std::vector<CanonicalKey>& keys) {
    std::string out;
    for (const auto& k : keys) out += (out.empty() ? "" : ",") + k.hex();
    return out;
}

/// A graph file (dualgraph/1 JSON) or a canonical key in hex.
DualGraph read_input(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) {
        std::ifstream in(arg);
        if (!in) throw std::runtime_error("cannot read " + arg);
        return graph_from_json(Json::parse(in));
    }
    try {
        return graph_from_key(CanonicalKey::from_hex(arg));
    } catch (const std::exception& e) {
        throw UsageError("'" + arg + "' is neither a graph file nor a canonical key (" + e.what() + ")");
    }
}

DivisorSet read_divisors(const Config& cfg) {
    if (cfg.inputs.empty()) throw UsageError("no divisors given");
    std::vector<DualGraph> graphs;
    for (const auto& arg : cfg.inputs) graphs.push_back(read_input(arg));
    GnSignature sig = signature_of(graphs.front());
    for (const DualGraph& g : graphs) {
        if (signature_of(g) != sig) throw UsageError("inputs come from different (g,n)");
    }
    if (!cfg.g.empty() || !cfg.n.empty()) {
        if (signature(cfg) != sig) throw UsageError("inputs do not belong to the requested (g,n)");
    }
    return make_divisor_set(sig, graphs);
}

void print_graphs_text(std::ostream& os, const std::vector<DualGraph>& graphs) {
    for (const DualGraph& g : graphs) os << canonical_key(g).hex() << "  " << describe(g) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_enumerate(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    GnSignature sig = signature(cfg);
    if (!cfg.k) throw UsageError("--k is required");
    if (*cfg.k < 1 || *cfg.k > static_cast<std::size_t>(sig.dimension())) {
        throw UsageError("--k must lie in 1.." + std::to_string(sig.dimension()) + " for " + to_string(sig));
    }
    StratumSet s = ::strata::strata(sig, *cfg.k, options(cfg));
    if (json_out(cfg)) {
        std::cout << to_json(s).dump(2) << '\n';
    } else {
        std::cout << "# " << to_string(sig) << " k=" << *cfg.k << ": " << s.size() << " strata\n";
        for (const auto& [key, g] : s.graphs) std::cout << key.hex() << "  " << describe(g) << '\n';
    }
    return kOk;
}

int cmd_intersect(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    DivisorSet s = read_divisors(cfg);
    StrataCatalog catalog(s.signature, options(cfg));
    IntersectionReport r = intersection_components(catalog, s);
    if (json_out(cfg)) {
        std::cout << to_json(r).dump(2) << '\n';
    } else {
        std::cout << "# " << to_string(s.signature) << " " << s.size() << " divisor(s): "
                  << (r.nonempty ? "nonempty, " + std::to_string(r.components.size()) + " component(s)" : "empty")
                  << '\n';
        print_graphs_text(std::cout, r.components);
    }
    return r.nonempty ? kOk : kNegative;
}

BoundaryComplex build_complex(const Config& cfg, StrataCatalog& catalog) {
    if (cfg.max_dim && *cfg.max_dim > catalog.max_edges()) {
        throw UsageError("--max-dim exceeds the dimension " + std::to_string(catalog.max_edges()));
    }
    return boundary_complex(catalog, cfg.max_dim);
}

int cmd_complex(const Config& cfg) {
    GnSignature sig = signature(cfg);
    StrataCatalog catalog(sig, options(cfg));
    BoundaryComplex c = build_complex(cfg, catalog);
    if (cfg.format == "json") {
        Json j = to_json(c);
        if (c.truncated()) j["max_face_size"] = c.max_face_size;
        std::cout << j.dump(2) << '\n';
    } else if (cfg.format == "dot") {
        std::cout << to_dot(c);
    } else {
        std::cout << "# " << to_string(sig) << " f-vector:";
        for (std::size_t f : f_vector(c)) std::cout << ' ' << f;
        if (c.truncated()) std::cout << " (faces up to size " << c.max_face_size << ")";
        std::cout << '\n';
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            std::cout << "D" << i << "  " << c.vertices[i].hex() << "  " << describe(graph_from_key(c.vertices[i]))
                      << '\n';
        }
        for (const Face& f : c.facets()) {
            std::cout << "facet";
            for (std::size_t i : f) std::cout << " D" << i;
            std::cout << '\n';
        }
    }
    return kOk;
}

void print_witness_text(const WitnessReport& w) {
    std::cout << "clique: " << key_list(w.clique) << '\n';
    for (const auto& k : w.clique) std::cout << "  " << describe(graph_from_key(k)) << '\n';
    std::cout << "pairwise faces: " << (w.pairwise_ok ? "yes" : "no") << '\n';
    std::cout << "face: " << (w.is_face ? "yes" : "no") << '\n';
    print_graphs_text(std::cout, w.components);
}

int cmd_flag_check(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    GnSignature sig = signature(cfg);
    StrataCatalog catalog(sig, options(cfg));
    BoundaryComplex c = build_complex(cfg, catalog);
    FlagResult r = is_flag(c);
    if (json_out(cfg)) {
        Json j = Json::object();
        j["g"] = sig.g;
        j["n"] = sig.n;
        j["flag"] = r.flag;
        j["predicted"] = predicted_flag(sig);
        if (c.truncated()) j["max_face_size"] = c.max_face_size;
        j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << to_string(sig) << (r.flag ? " flag" : " not flag");
        if (c.truncated()) std::cout << " (cliques up to size " << c.max_face_size << ")";
        std::cout << '\n';
        if (r.witness) print_witness_text(*r.witness);
    }
    return r.flag ? kOk : kNegative;
}

/// Without inputs: the minimal non-face clique, exit 1 if the complex is flag.
/// With inputs: the report for that clique, exit 0 iff it is a non-face clique.
int cmd_witness(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    std::optional<WitnessReport> w;
    if (cfg.inputs.empty()) {
        GnSignature sig = signature(cfg);
        StrataCatalog catalog(sig, options(cfg));
        w = is_flag(build_complex(cfg, catalog)).witness;
    } else {
        DivisorSet s = read_divisors(cfg);
        StrataCatalog catalog(s.signature, options(cfg));
        BoundaryComplex c = build_complex(cfg, catalog);
        w = witness_report(catalog, c, s);
    }
    if (json_out(cfg)) {
        std::cout << (w ? to_json(*w) : Json(nullptr)).dump(2) << '\n';
    } else if (w) {
        print_witness_text(*w);
    } else {
        std::cout << "no witness: the complex is flag\n";
    }
    return w && w->pairwise_ok && !w->is_face ? kOk : kNegative;
}

int cmd_verify(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    auto [g_lo, g_hi] = parse_range(cfg.g, "--g");
    auto [n_lo, n_hi] = parse_range(cfg.n, "--n");
    if (g_lo < 0 || n_lo < 0) throw UsageError("ranges must be nonnegative");
    EnumerationOptions opts = options(cfg);
    bool all_agree = true, overflow = false;
    Json rows = Json::array();
    if (!json_out(cfg)) {
        std::cout << std::left << std::setw(8) << "(g,n)" << std::setw(11) << "predicted" << std::setw(10)
                  << "computed" << std::setw(8) << "agrees" << std::setw(10) << "seconds"
                  << "witness\n";
    }
    for (int g = g_lo; g <= g_hi; ++g) {
        for (int n = n_lo; n <= n_hi; ++n) {
            GnSignature sig{g, n};
            if (!sig.exists()) continue;
            TheoremVerdict v = check_theorem(sig, opts);
            if (v.skipped) {
                overflow = true;
            } else {
                all_agree = all_agree && v.agrees();
            }
            if (json_out(cfg)) {
                rows.push_back(to_json(v));
                continue;
            }
            auto yn = [](bool b) { return b ? "flag" : "no"; };
            std::ostringstream secs;
            secs << std::fixed << std::setprecision(2) << v.seconds;
            std::cout << std::left << std::setw(8) << to_string(sig) << std::setw(11) << yn(v.predicted)
                      << std::setw(10) << (v.computed ? yn(*v.computed) : "skipped") << std::setw(8)
                      << (v.skipped ? "-" : v.agrees() ? "yes" : "NO") << std::setw(10) << secs.str()
                      << (v.witness ? key_list(v.witness->clique) : v.skipped ? v.note : "") << '\n';
        }
    }
    if (json_out(cfg)) {
        Json out = Json::object();
        out["rows"] = rows;
        out["all_agree"] = all_agree;
        out["skipped"] = overflow;
        std::cout << out.dump(2) << '\n';
    }
    if (overflow && !cfg.skip_over_budget) return kResource;
    return all_agree ? kOk : kNegative;
}

int cmd_paper_suite(const Config& cfg) {
    require_format(cfg, {"json", "text"});
    auto checks = reproduction_suite(options(cfg));
    std::size_t passed = 0;
    Json rows = Json::array();
    for (const auto& c : checks) {
        passed += c.passed;
        if (json_out(cfg)) {
            rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
        } else {
            std::ostringstream secs;
            secs << std::fixed << std::setprecision(2) << c.seconds;
            std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << ", " << secs.str()
                      << "s]\n";
        }
    }
    if (json_out(cfg)) {
        std::cout << Json{{"checks", rows}, {"passed", passed}, {"total", checks.size()}}.dump(2) << '\n';
    } else {
        std::cout << passed << "/" << checks.size() << " checks passed\n";
    }
    return passed == checks.size() ? kOk : kNegative;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Config& cfg, bool with_k = false) {
    sub->add_option("--g", cfg.g, "genus");
    sub->add_option("--n", cfg.n, "number of marked points");
    if (with_k) sub->add_option("--k", cfg.k, "number of edges (codimension)");
    sub->add_option("--max-dim", cfg.max_dim, "largest face size to build");
    sub->add_option("--cache-dir", cfg.cache_dir, "stratum cache directory (default: $STRATA_CACHE_DIR)");
    sub->add_option("--max-graphs", cfg.max_graphs, "per-level enumeration budget")->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--threads", cfg.threads, "worker threads, or 'auto'");
}

void report_error(const Config& cfg, int code, const std::string& kind, const std::string& message) {
    if (json_out(cfg)) {
        Json j = {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
        std::cerr << j.dump() << '\n';
    } else {
        std::cerr << "strata: " << kind << " error: " << message << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary strata and boundary complexes of moduli spaces of stable curves"};
    app.name("strata");
    app.require_subcommand(0, 1);
    Config cfg;
    bool suite = false;
    app.add_flag("--paper-suite", suite, "run the reproduction suite and print a pass/fail summary");

    auto* enumerate = app.add_subcommand("enumerate", "list the strata with --k edges");
    add_common(enumerate, cfg, true);
    auto* intersect = app.add_subcommand("intersect", "intersect divisors given as graph files or keys");
    add_common(intersect, cfg);
    intersect->add_option("inputs", cfg.inputs, "graph files or canonical keys")->required();
    auto* complex = app.add_subcommand("complex", "build the boundary complex");
    add_common(complex, cfg);
    auto* flag_check = app.add_subcommand("flag-check", "decide whether the boundary complex is flag");
    add_common(flag_check, cfg);
    auto* witness = app.add_subcommand("witness", "minimal non-face clique, or the report for a given clique");
    add_common(witness, cfg);
    witness->add_option("inputs", cfg.inputs, "graph files or canonical keys");
    auto* verify = app.add_subcommand("verify", "compare flagness with the classification over a grid");
    add_common(verify, cfg);
    verify->add_flag("--skip-over-budget", cfg.skip_over_budget, "report over-budget cells as skipped");
    auto* paper_suite = app.add_subcommand("paper-suite", "run the reproduction suite");
    add_common(paper_suite, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (enumerate->parsed()) return cmd_enumerate(cfg);
        if (intersect->parsed()) return cmd_intersect(cfg);
        if (complex->parsed()) return cmd_complex(cfg);
        if (flag_check->parsed()) return cmd_flag_check(cfg);
        if (witness->parsed()) return cmd_witness(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (paper_suite->parsed() || suite) return cmd_paper_suite(cfg);
        std::cerr << app.help();
        return kUsage;
    } catch (const BudgetExceeded& e) {
        report_error(cfg, kResource, "budget", e.what());
        return kResource;
    } catch (const UsageError& e) {
        report_error(cfg, kUsage, "usage", e.what());
        return kUsage;
    } catch (const std::logic_error& e) {
        report_error(cfg, kUsage, "input", e.what());
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        report_error(cfg, kUsage, "input", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        report_error(cfg, kResource, "resource", e.what());
        return kResource;
    }
}
