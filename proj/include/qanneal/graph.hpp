#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qanneal/errors.hpp"

namespace qanneal {

// One undirected coupling between sites i < j (1-based).
struct Edge {
    int i = 0;
    int j = 0;
    double coupling = 0.0;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.i == b.i && a.j == b.j && a.coupling == b.coupling;
    }
};

// Spin network: site count, canonically sorted i<j edge list, per-site fields.
struct SpinGraph {
    int n_sites = 0;
    std::vector<Edge> edges;
    std::vector<double> fields;

    friend bool operator==(const SpinGraph& a, const SpinGraph& b) {
        return a.n_sites == b.n_sites && a.edges == b.edges && a.fields == b.fields;
    }
};

// Fixed component order of the 4-site coupling vector.
inline const std::array<std::pair<int, int>, 6>& coupling_vector_pairs() {
    static const std::array<std::pair<int, int>, 6> pairs = {
        {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
    return pairs;
}

// Couplings for a 4-site graph in the fixed order [J12, J13, J14, J23, J24, J34].
struct CouplingVector {
    std::array<double, 6> values{};

    CouplingVector() = default;

    explicit CouplingVector(const std::vector<double>& v) {
        if (v.size() != values.size()) {
            throw validation_error("coupling vector must have exactly 6 entries "
                                   "[J12, J13, J14, J23, J24, J34], got " +
                                   std::to_string(v.size()));
        }
        std::copy(v.begin(), v.end(), values.begin());
    }
};

// Validates invariants and canonicalizes edge order.
inline SpinGraph make_graph(int n_sites, std::vector<Edge> edges, std::vector<double> fields) {
    if (n_sites < 1) {
        throw validation_error("n_sites must be positive, got " + std::to_string(n_sites));
    }
    if (static_cast<int>(fields.size()) != n_sites) {
        throw validation_error("fields must have exactly n_sites=" + std::to_string(n_sites) +
                               " entries, got " + std::to_string(fields.size()));
    }
    for (double h : fields) {
        if (!std::isfinite(h)) throw validation_error("fields entries must be finite");
    }
    for (const Edge& e : edges) {
        if (e.i < 1 || e.j > n_sites || e.i >= e.j) {
            throw validation_error("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                   ") violates 1 <= i < j <= " + std::to_string(n_sites));
        }
        if (!std::isfinite(e.coupling)) {
            throw validation_error("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                   ") coupling must be finite");
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::pair{a.i, a.j} < std::pair{b.i, b.j};
    });
    for (std::size_t k = 1; k < edges.size(); ++k) {
        if (edges[k].i == edges[k - 1].i && edges[k].j == edges[k - 1].j) {
            throw validation_error("duplicate edge (" + std::to_string(edges[k].i) + "," +
                                   std::to_string(edges[k].j) + ")");
        }
    }
    return SpinGraph{n_sites, std::move(edges), std::move(fields)};
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"chain", "square", "chain_loops", "complete"};
    return names;
}

// Edge sets of the four named 4-site topologies.
inline const std::vector<std::pair<int, int>>& preset_edge_pairs(std::string_view name) {
    static const std::vector<std::pair<int, int>> chain = {{1, 2}, {2, 3}, {3, 4}};
    static const std::vector<std::pair<int, int>> square = {{1, 2}, {1, 4}, {2, 3}, {3, 4}};
    // "linear chain with loops": the complete graph minus edge (1,4).
    static const std::vector<std::pair<int, int>> chain_loops = {
        {1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
    static const std::vector<std::pair<int, int>> complete = {
        {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    if (name == "chain") return chain;
    if (name == "square") return square;
    if (name == "chain_loops") return chain_loops;
    if (name == "complete") return complete;
    std::ostringstream msg;
    msg << "unknown preset \"" << name << "\"; valid presets:";
    for (const auto& p : preset_names()) msg << " " << p;
    throw config_error(msg.str());
}

// Uniform-coupling, uniform-field preset graph.
inline SpinGraph preset_topology(std::string_view name, double J, double h) {
    if (!std::isfinite(J) || !std::isfinite(h)) {
        throw validation_error("preset coupling J and field h must be finite");
    }
    std::vector<Edge> edges;
    for (const auto& [i, j] : preset_edge_pairs(name)) edges.push_back({i, j, J});
    return make_graph(4, std::move(edges), std::vector<double>(4, h));
}

// Preset topology with per-edge couplings from the fixed-order vector.
// Vector entries whose pair is absent from the topology must be zero.
inline SpinGraph from_coupling_vector(std::string_view topology, const CouplingVector& vec,
                                      const std::vector<double>& fields) {
    const auto& pairs = preset_edge_pairs(topology);
    if (fields.size() != 4) {
        throw validation_error("fields must have exactly 4 entries for 4-site presets, got " +
                               std::to_string(fields.size()));
    }
    std::vector<Edge> edges;
    const auto& order = coupling_vector_pairs();
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& [i, j] = order[k];
        const double J = vec.values[k];
        if (!std::isfinite(J)) throw validation_error("coupling vector entries must be finite");
        const bool present = std::find(pairs.begin(), pairs.end(), order[k]) != pairs.end();
        if (present) {
            edges.push_back({i, j, J});
        } else if (J != 0.0) {
            throw validation_error("nonzero coupling J" + std::to_string(i) + std::to_string(j) +
                                   "=" + std::to_string(J) + " on an edge absent from topology \"" +
                                   std::string(topology) + "\"");
        }
    }
    return make_graph(4, std::move(edges), fields);
}

// JSON form: {"n_sites": int, "edges": [[i, j, J], ...], "fields": [h1, ...]},
// site indices 1-based.
inline nlohmann::json graph_to_json(const SpinGraph& g) {
    nlohmann::json j;
    j["n_sites"] = g.n_sites;
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : g.edges) j["edges"].push_back({e.i, e.j, e.coupling});
    j["fields"] = g.fields;
    return j;
}

inline SpinGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("graph must be a JSON object");
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        if (key != "n_sites" && key != "edges" && key != "fields") {
            throw config_error("unknown key \"" + key + "\" in graph object");
        }
    }
    if (!j.contains("n_sites") || !j["n_sites"].is_number_integer()) {
        throw config_error("graph key \"n_sites\" must be an integer");
    }
    if (!j.contains("edges") || !j["edges"].is_array()) {
        throw config_error("graph key \"edges\" must be an array of [i, j, J] triples");
    }
    if (!j.contains("fields") || !j["fields"].is_array()) {
        throw config_error("graph key \"fields\" must be an array of numbers");
    }
    std::vector<Edge> edges;
    for (const auto& t : j["edges"]) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() ||
            !t[1].is_number_integer() || !t[2].is_number()) {
            throw config_error("graph key \"edges\" entries must be [int i, int j, number J]");
        }
        edges.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
    }
    std::vector<double> fields;
    for (const auto& h : j["fields"]) {
        if (!h.is_number()) throw config_error("graph key \"fields\" entries must be numbers");
        fields.push_back(h.get<double>());
    }
    return make_graph(j["n_sites"].get<int>(), std::move(edges), std::move(fields));
}

} // namespace qanneal
