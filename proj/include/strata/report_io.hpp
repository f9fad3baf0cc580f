#pragma once

// JSON and DOT forms of intersection reports ("ixreport/1"), boundary
// complexes ("bcomplex/1"), flag witnesses and classification verdicts.

#include <sstream>
#include <string>

#include "strata/complex.hpp"
#include "strata/json_io.hpp"

namespace strata {

inline constexpr const char* kIntersectionReportSchema = "ixreport/1";
inline constexpr const char* kBoundaryComplexSchema = "bcomplex/1";

namespace detail {
inline Json keyed_graphs(const std::vector<DualGraph>& graphs) {
    Json out = Json::array();
    for (const DualGraph& g : graphs) {
        Json item = Json::object();
        item["key"] = canonical_key(g).hex();
        item["graph"] = to_json(g);
        out.push_back(std::move(item));
    }
    return out;
}

inline Json key_list(const std::vector<CanonicalKey>& keys) {
    Json out = Json::array();
    for (const CanonicalKey& k : keys) out.push_back(k.hex());
    return out;
}

template <typename J>
std::vector<DualGraph> graphs_from(const J& arr) {
    std::vector<DualGraph> out;
    for (const auto& item : arr) {
        DualGraph g = graph_from_json(item.at("graph"));
        if (canonical_key(g).hex() != item.at("key").template get<std::string>()) {
            throw std::invalid_argument("component key does not match its graph");
        }
        out.push_back(std::move(g));
    }
    return out;
}
}  // namespace detail

inline Json to_json(const IntersectionReport& r) {
    Json out = Json::object();
    out["schema"] = kIntersectionReportSchema;
    out["g"] = r.input.signature.g;
    out["n"] = r.input.signature.n;
    out["input"] = detail::key_list(r.input.sorted());
    out["nonempty"] = r.nonempty;
    out["components"] = detail::keyed_graphs(r.components);
    return out;
}

inline IntersectionReport intersection_report_from_json(const Json& j) {
    if (j.value("schema", "") != kIntersectionReportSchema) throw std::invalid_argument("not an ixreport/1 document");
    IntersectionReport r;
    r.input.signature = {j.at("g").get<int>(), j.at("n").get<int>()};
    for (const auto& k : j.at("input")) r.input.keys.insert(CanonicalKey::from_hex(k.get<std::string>()));
    r.components = detail::graphs_from(j.at("components"));
    r.nonempty = j.at("nonempty").get<bool>();
    if (r.nonempty != !r.components.empty()) throw std::invalid_argument("nonempty flag contradicts components");
    return r;
}

/// {"schema","g","n","vertices":[keys],"facets":[[indices]]}
inline Json to_json(const BoundaryComplex& c) {
    Json out = Json::object();
    out["schema"] = kBoundaryComplexSchema;
    out["g"] = c.signature.g;
    out["n"] = c.signature.n;
    out["vertices"] = detail::key_list(c.vertices);
    out["facets"] = Json::array();
    for (const Face& f : c.facets()) out["facets"].push_back(f);
    return out;
}

/// Rebuilds all faces as subsets of the listed facets. The result counts as a
/// full build unless "max_face_size" says otherwise.
inline BoundaryComplex boundary_complex_from_json(const Json& j) {
    if (j.value("schema", "") != kBoundaryComplexSchema) throw std::invalid_argument("not a bcomplex/1 document");
    BoundaryComplex c;
    c.signature = {j.at("g").get<int>(), j.at("n").get<int>()};
    for (const auto& k : j.at("vertices")) c.vertices.push_back(CanonicalKey::from_hex(k.get<std::string>()));
    if (!std::is_sorted(c.vertices.begin(), c.vertices.end())) throw std::invalid_argument("vertices out of key order");
    c.max_face_size = j.value("max_face_size", static_cast<std::size_t>(std::max(0, c.signature.dimension())));
    for (const auto& fj : j.at("facets")) {
        Face facet = fj.get<Face>();
        for (std::size_t i : facet) {
            if (i >= c.vertices.size()) throw std::invalid_argument("facet index out of range");
        }
        std::sort(facet.begin(), facet.end());
        const std::size_t m = facet.size();
        if (c.faces.size() < m) c.faces.resize(m);
        for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
            Face sub;
            for (std::size_t i = 0; i < m; ++i) {
                if ((mask >> i) & 1UL) sub.push_back(facet[i]);
            }
            c.faces[sub.size() - 1].insert(std::move(sub));
        }
    }
    return c;
}

inline Json to_json(const WitnessReport& w) {
    Json out = Json::object();
    out["clique"] = detail::key_list(w.clique);
    out["is_face"] = w.is_face;
    out["pairwise_ok"] = w.pairwise_ok;
    out["components"] = detail::keyed_graphs(w.components);
    return out;
}

inline Json to_json(const TheoremVerdict& v) {
    Json out = Json::object();
    out["g"] = v.signature.g;
    out["n"] = v.signature.n;
    out["predicted"] = v.predicted;
    out["computed"] = v.computed ? Json(*v.computed) : Json(nullptr);
    out["agrees"] = v.agrees();
    out["skipped"] = v.skipped;
    out["witness"] = v.witness ? detail::key_list(v.witness->clique) : Json::array();
    out["seconds"] = v.seconds;
    if (!v.note.empty()) out["note"] = v.note;
    return out;
}

/// 1-skeleton as an undirected DOT graph; divisor graphs go into tooltips.
inline std::string to_dot(const BoundaryComplex& c) {
    std::ostringstream os;
    os << "graph boundary_complex_g" << c.signature.g << "n" << c.signature.n << " {\n";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        os << "  d" << i << " [label=\"D" << i << "\", tooltip=\"" << describe(graph_from_key(c.vertices[i]))
           << "\"];\n";
    }
    if (c.faces.size() > 1) {
        for (const Face& e : c.faces[1]) os << "  d" << e[0] << " -- d" << e[1] << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace strata
