#pragma once

// JSON forms of dual graphs ("dualgraph/1") and stratum sets ("stratumset/1").

#include <string>
#include <vector>

#include "json.hpp"
#include "strata/canonical.hpp"

namespace strata {

using Json = nlohmann::ordered_json;

inline constexpr const char* kDualGraphSchema = "dualgraph/1";

/// {"genus":[...],"edges":[[i,j],...],"legs":{"1":v,...}} with edges sorted.
inline Json to_json(const DualGraph& g) {
    Json out = Json::object();
    out["genus"] = Json::array();
    for (int gv : g.genera()) out["genus"].push_back(gv);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::sort(edges.begin(), edges.end());
    out["edges"] = Json::array();
    for (const Edge& e : edges) out["edges"].push_back(Json::array({e.a, e.b}));
    out["legs"] = Json::object();
    for (std::size_t m = 1; m <= g.mark_count(); ++m) out["legs"][std::to_string(m)] = g.leg(m);
    return out;
}

template <typename J>
DualGraph graph_from_json(const J& j) {
    if (!j.is_object() || !j.contains("genus") || !j.contains("edges") || !j.contains("legs")) {
        throw std::invalid_argument("dual graph JSON needs \"genus\", \"edges\" and \"legs\"");
    }
    if (j.contains("schema") && j.at("schema") != kDualGraphSchema) {
        throw std::invalid_argument("unsupported dual graph schema");
    }
    std::vector<int> genera;
    for (const auto& x : j.at("genus")) genera.push_back(x.template get<int>());
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
        auto a = e.at(0).template get<long long>(), b = e.at(1).template get<long long>();
        if (a < 0 || b < 0) throw std::invalid_argument("negative vertex id");
        edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
    const auto& legs_json = j.at("legs");
    if (!legs_json.is_object()) throw std::invalid_argument("\"legs\" must be an object");
    std::vector<VertexId> legs(legs_json.size());
    std::vector<bool> seen(legs.size(), false);
    for (const auto& [label, vertex] : legs_json.items()) {
        std::size_t used = 0;
        unsigned long mark = 0;
        try {
            mark = std::stoul(label, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != label.size() || mark == 0 || mark > legs.size() || seen[mark - 1]) {
            throw std::invalid_argument("leg labels must be exactly 1..n, got \"" + label + "\"");
        }
        auto v = vertex.template get<long long>();
        if (v < 0) throw std::invalid_argument("negative vertex id");
        seen[mark - 1] = true;
        legs[mark - 1] = static_cast<VertexId>(v);
    }
    return DualGraph(std::move(genera), std::move(edges), std::move(legs));
}

}  // namespace strata
