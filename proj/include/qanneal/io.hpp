#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qanneal/anneal.hpp"
#include "qanneal/errors.hpp"

#ifndef QANNEAL_VERSION
#define QANNEAL_VERSION "0.0.0-dev"
#endif

namespace qanneal {

// One run: graph + model + sweep controls, with an optional output directory.
struct RunConfig {
    SpinGraph graph;
    ModelSpec model;
    SweepConfig sweep;
    std::optional<std::string> out_dir;
};

// Fixed column order of the results table.
inline const std::array<const char*, 11>& result_columns() {
    static const std::array<const char*, 11> cols = {
        "lambda",        "E0",          "E1",          "gap",
        "ground_degeneracy", "entropy_2_2", "entropy_1_3", "entropy_3_1",
        "magnetization", "coherence_l1", "fidelity"};
    return cols;
}

// 12 significant digits; lowercase scientific where |x| < 1e-4 or >= 1e6
// (zero included). std::to_chars keeps the decimal point a '.' regardless of
// the process locale.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[48];
    const double ax = std::abs(x);
    std::to_chars_result r{};
    if (x == 0.0 || ax < 1e-4 || ax >= 1e6) {
        r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 11);
    } else {
        const int decimals = 11 - int(std::floor(std::log10(ax)));
        r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
    }
    return std::string(buf, r.ptr);
}

namespace detail {

inline void check_keys(const nlohmann::json& obj, const char* ctx,
                       std::initializer_list<std::string_view> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            if (item.key() == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw config_error("unknown key \"" + item.key() + "\" in " + ctx);
        }
    }
}

inline const nlohmann::json& require_key(const nlohmann::json& obj, const char* ctx,
                                         const char* key) {
    if (!obj.contains(key)) {
        throw config_error(std::string(ctx) + " requires key \"" + key + "\"");
    }
    return obj.at(key);
}

inline double get_number(const nlohmann::json& v, const char* ctx, const char* key) {
    if (!v.is_number()) {
        throw config_error("key \"" + std::string(key) + "\" in " + ctx + " must be a number");
    }
    return v.get<double>();
}

inline int get_integer(const nlohmann::json& v, const char* ctx, const char* key) {
    if (!v.is_number_integer()) {
        throw config_error("key \"" + std::string(key) + "\" in " + ctx +
                           " must be an integer");
    }
    return v.get<int>();
}

inline bool get_boolean(const nlohmann::json& v, const char* ctx, const char* key) {
    if (!v.is_boolean()) {
        throw config_error("key \"" + std::string(key) + "\" in " + ctx + " must be a boolean");
    }
    return v.get<bool>();
}

inline std::string get_string(const nlohmann::json& v, const char* ctx, const char* key) {
    if (!v.is_string()) {
        throw config_error("key \"" + std::string(key) + "\" in " + ctx + " must be a string");
    }
    return v.get<std::string>();
}

// "h" may be a uniform scalar or a per-site list of 4.
inline std::vector<double> resolve_fields(const nlohmann::json& h) {
    if (h.is_number()) return std::vector<double>(4, h.get<double>());
    if (h.is_array()) {
        std::vector<double> fields;
        for (const auto& v : h) {
            if (!v.is_number()) {
                throw config_error("key \"h\" entries in graph must be numbers");
            }
            fields.push_back(v.get<double>());
        }
        if (fields.size() != 4) {
            throw config_error("key \"h\" in graph must have exactly 4 entries when a list");
        }
        return fields;
    }
    throw config_error("key \"h\" in graph must be a number or a list of 4 numbers");
}

inline SpinGraph graph_from_config(const nlohmann::json& g) {
    if (!g.is_object()) throw config_error("\"graph\" must be a JSON object");
    if (g.contains("preset")) {
        check_keys(g, "graph (preset form; use exactly one graph form)",
                   {"preset", "J", "h", "coupling_vector"});
        const std::string name = get_string(g.at("preset"), "graph", "preset");
        const bool has_uniform = g.contains("J");
        const bool has_vector = g.contains("coupling_vector");
        if (has_uniform == has_vector) {
            throw config_error("graph preset form requires exactly one of \"J\" or "
                               "\"coupling_vector\"");
        }
        const std::vector<double> fields = resolve_fields(require_key(g, "graph", "h"));
        if (has_uniform) {
            const double J = get_number(g.at("J"), "graph", "J");
            std::vector<Edge> edges;
            for (const auto& [i, j] : preset_edge_pairs(name)) edges.push_back({i, j, J});
            return make_graph(4, std::move(edges), fields);
        }
        const auto& vec = g.at("coupling_vector");
        if (!vec.is_array()) {
            throw config_error("key \"coupling_vector\" in graph must be an array of 6 numbers");
        }
        std::vector<double> values;
        for (const auto& v : vec) {
            if (!v.is_number()) {
                throw config_error("key \"coupling_vector\" entries must be numbers");
            }
            values.push_back(v.get<double>());
        }
        return from_coupling_vector(name, CouplingVector(values), fields);
    }
    return graph_from_json(g);
}

inline ModelSpec model_from_config(const nlohmann::json& m) {
    if (!m.is_object()) throw config_error("\"model\" must be a JSON object");
    check_keys(m, "model", {"model", "trigger", "trigger_strength"});
    ModelSpec spec;
    const std::string model = get_string(require_key(m, "model", "model"), "model", "model");
    if (model == "ising") spec.model = Model::ising;
    else if (model == "xy") spec.model = Model::xy;
    else if (model == "dm") spec.model = Model::dm;
    else throw config_error("key \"model\" must be one of: ising, xy, dm; got \"" + model + "\"");
    std::string trigger = "none";
    if (m.contains("trigger")) trigger = get_string(m.at("trigger"), "model", "trigger");
    if (trigger == "none") spec.trigger = Trigger::none;
    else if (trigger == "xx") spec.trigger = Trigger::xx;
    else if (trigger == "yy") spec.trigger = Trigger::yy;
    else {
        throw config_error("key \"trigger\" must be one of: none, xx, yy; got \"" + trigger +
                           "\"");
    }
    if (spec.trigger == Trigger::none) {
        if (m.contains("trigger_strength") &&
            get_number(m.at("trigger_strength"), "model", "trigger_strength") != 0.0) {
            throw config_error("key \"trigger_strength\" must be absent or zero when trigger "
                               "is none");
        }
        spec.trigger_strength = 0.0;
    } else {
        // Default trigger strength when a trigger is requested without one.
        spec.trigger_strength =
            m.contains("trigger_strength")
                ? get_number(m.at("trigger_strength"), "model", "trigger_strength")
                : 2.0;
        if (!std::isfinite(spec.trigger_strength)) {
            throw config_error("key \"trigger_strength\" must be finite");
        }
    }
    return spec;
}

inline SweepConfig sweep_from_config(const nlohmann::json& s) {
    if (!s.is_object()) throw config_error("\"sweep\" must be a JSON object");
    check_keys(s, "sweep",
               {"lambda_points", "degeneracy_rel_tol", "refine_gap", "refine_tol", "threads"});
    SweepConfig cfg;
    if (s.contains("lambda_points")) {
        cfg.lambda_points = get_integer(s.at("lambda_points"), "sweep", "lambda_points");
        if (cfg.lambda_points < 2) {
            throw config_error("key \"lambda_points\" in sweep must be >= 2");
        }
    }
    if (s.contains("degeneracy_rel_tol")) {
        cfg.degeneracy_rel_tol =
            get_number(s.at("degeneracy_rel_tol"), "sweep", "degeneracy_rel_tol");
        if (!(cfg.degeneracy_rel_tol > 0.0)) {
            throw config_error("key \"degeneracy_rel_tol\" in sweep must be positive");
        }
    }
    if (s.contains("refine_gap")) {
        cfg.refine_gap = get_boolean(s.at("refine_gap"), "sweep", "refine_gap");
    }
    if (s.contains("refine_tol")) {
        cfg.refine_tol = get_number(s.at("refine_tol"), "sweep", "refine_tol");
        if (!(cfg.refine_tol > 0.0)) {
            throw config_error("key \"refine_tol\" in sweep must be positive");
        }
    }
    if (s.contains("threads")) {
        cfg.threads = get_integer(s.at("threads"), "sweep", "threads");
        if (cfg.threads < 0) throw config_error("key \"threads\" in sweep must be >= 0");
    }
    return cfg;
}

// The default three bipartitions are the only ones the fixed results-table
// schema can represent.
inline void require_default_partitions(const SweepConfig& cfg) {
    const SweepConfig defaults;
    bool ok = cfg.partitions.size() == defaults.partitions.size();
    for (std::size_t p = 0; ok && p < cfg.partitions.size(); ++p) {
        ok = cfg.partitions[p].left == defaults.partitions[p].left &&
             cfg.partitions[p].right == defaults.partitions[p].right;
    }
    if (!ok) {
        throw validation_error("the results table requires the default partitions "
                               "{2|2, 1|3, 3|1}");
    }
}

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

// Strict-mode parse: unknown keys anywhere are rejected, every failure names
// the offending key.
inline RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw config_error("config must be a single JSON object");
    detail::check_keys(j, "config", {"graph", "model", "sweep", "out_dir"});
    RunConfig cfg;
    cfg.graph = detail::graph_from_config(detail::require_key(j, "config", "graph"));
    if (cfg.graph.n_sites != 4) {
        throw config_error("n_sites must be 4: the results table schema (entropy columns) "
                           "is fixed to four sites");
    }
    cfg.model = detail::model_from_config(detail::require_key(j, "config", "model"));
    if (j.contains("sweep")) cfg.sweep = detail::sweep_from_config(j.at("sweep"));
    if (j.contains("out_dir")) {
        cfg.out_dir = detail::get_string(j.at("out_dir"), "config", "out_dir");
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

// Canonical config echo: inline graph form, full model and sweep blocks.
// Feeding this back as a config file reproduces the run.
inline nlohmann::json dump_config(const SpinGraph& graph, const ModelSpec& model,
                                  const SweepConfig& sweep) {
    nlohmann::json j;
    j["graph"] = graph_to_json(graph);
    j["model"]["model"] =
        model.model == Model::ising ? "ising" : (model.model == Model::xy ? "xy" : "dm");
    j["model"]["trigger"] = model.trigger == Trigger::none
                                ? "none"
                                : (model.trigger == Trigger::xx ? "xx" : "yy");
    j["model"]["trigger_strength"] = model.trigger_strength;
    j["sweep"]["lambda_points"] = sweep.lambda_points;
    j["sweep"]["degeneracy_rel_tol"] = sweep.degeneracy_rel_tol;
    j["sweep"]["refine_gap"] = sweep.refine_gap;
    j["sweep"]["refine_tol"] = sweep.refine_tol;
    j["sweep"]["threads"] = sweep.threads;
    return j;
}

// CSV with '#'-prefixed metadata; byte-identical for identical results modulo
// the "# generated:" line.
inline void write_results(const SweepResult& result, const std::string& path) {
    if (result.records.empty()) {
        throw validation_error("refusing to write an empty results table");
    }
    detail::require_default_partitions(result.sweep);
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "# qanneal results\n";
    out << "# version: " << QANNEAL_VERSION << "\n";
    out << "# generated: " << detail::utc_timestamp() << "\n";
    out << "# config: " << dump_config(result.graph, result.model, result.sweep).dump() << "\n";
    out << "# target_ground_energy: " << format_number(result.target_ground_energy) << "\n";
    out << "# target_ground_degeneracy: " << result.target_ground_degeneracy << "\n";
    out << "# min_gap_lambda: " << format_number(result.min_gap.lambda) << "\n";
    out << "# min_gap: " << format_number(result.min_gap.gap) << "\n";
    const auto& cols = result_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << "\n";
    for (const SweepRecord& r : result.records) {
        out << format_number(r.lambda) << ',' << format_number(r.e0) << ','
            << format_number(r.e1) << ',' << format_number(r.gap) << ','
            << r.ground_degeneracy << ',' << format_number(r.merits.entropies[0]) << ','
            << format_number(r.merits.entropies[1]) << ','
            << format_number(r.merits.entropies[2]) << ','
            << format_number(r.merits.magnetization) << ','
            << format_number(r.merits.coherence_l1) << ','
            << format_number(r.merits.fidelity) << "\n";
    }
    if (!out.good()) throw io_error("write failed: " + path);
}

// Summary of one sweep as JSON: minimum gap, trapezoidal mean fidelity, peak
// entropy per partition, and the final-lambda record.
inline void write_summary(const SweepResult& result, const std::string& path) {
    const SweepSummary s = summarize(result);
    nlohmann::json j;
    j["min_gap"]["lambda"] = s.min_gap.lambda;
    j["min_gap"]["gap"] = s.min_gap.gap;
    j["mean_fidelity"] = s.mean_fidelity;
    for (const PeakEntropy& p : s.peak_entropies) {
        j["peak_entropy"][p.partition]["value"] = p.value;
        j["peak_entropy"][p.partition]["lambda"] = p.lambda;
    }
    j["final"]["lambda"] = s.final_record.lambda;
    j["final"]["gap"] = s.final_record.gap;
    j["final"]["entropy_2_2"] = s.final_record.merits.entropies[0];
    j["final"]["entropy_1_3"] = s.final_record.merits.entropies[1];
    j["final"]["entropy_3_1"] = s.final_record.merits.entropies[2];
    j["final"]["magnetization"] = s.final_record.merits.magnetization;
    j["final"]["coherence_l1"] = s.final_record.merits.coherence_l1;
    j["final"]["fidelity"] = s.final_record.merits.fidelity;
    j["target_ground_energy"] = result.target_ground_energy;
    j["target_ground_degeneracy"] = result.target_ground_degeneracy;
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out.good()) throw io_error("write failed: " + path);
}

// Value columns addressable by name (plot data, summaries).
inline double record_value(const SweepRecord& r, std::string_view column) {
    if (column == "E0") return r.e0;
    if (column == "E1") return r.e1;
    if (column == "gap") return r.gap;
    if (column == "ground_degeneracy") return double(r.ground_degeneracy);
    if (column == "entropy_2_2") return r.merits.entropies[0];
    if (column == "entropy_1_3") return r.merits.entropies[1];
    if (column == "entropy_3_1") return r.merits.entropies[2];
    if (column == "magnetization") return r.merits.magnetization;
    if (column == "coherence_l1") return r.merits.coherence_l1;
    if (column == "fidelity") return r.merits.fidelity;
    std::ostringstream msg;
    msg << "unknown merit column \"" << column << "\"; valid columns:";
    for (std::size_t c = 1; c < result_columns().size(); ++c) {
        msg << " " << result_columns()[c];
    }
    throw validation_error(msg.str());
}

// Whitespace-delimited (lambda, value) blocks, one per labeled result,
// separated by blank lines, label order preserved.
inline void emit_plot_data(const std::vector<std::pair<std::string, SweepResult>>& results,
                           std::string_view merit, const std::string& path) {
    if (results.empty()) throw validation_error("emit_plot_data requires at least one result");
    for (const auto& [label, res] : results) {
        if (res.records.empty()) {
            throw validation_error("emit_plot_data: result \"" + label + "\" is empty");
        }
        record_value(res.records.front(), merit); // validates the column name
        detail::require_default_partitions(res.sweep);
        if (res.records.size() != results.front().second.records.size()) {
            throw validation_error("emit_plot_data: mismatched lambda grids");
        }
        for (std::size_t k = 0; k < res.records.size(); ++k) {
            if (res.records[k].lambda != results.front().second.records[k].lambda) {
                throw validation_error("emit_plot_data: mismatched lambda grids");
            }
        }
    }
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    out << "# merit: " << merit << "\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) out << "\n";
        out << "# " << results[i].first << "\n";
        for (const SweepRecord& r : results[i].second.records) {
            out << format_number(r.lambda) << ' ' << format_number(record_value(r, merit))
                << "\n";
        }
    }
    if (!out.good()) throw io_error("write failed: " + path);
}

} // namespace qanneal
