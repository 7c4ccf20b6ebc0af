#pragma once

#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qanneal/io.hpp"

namespace qanneal {

namespace detail {

inline constexpr const char* k_default_merits[] = {"gap", "entropy_2_2", "magnetization",
                                                   "coherence_l1", "fidelity"};

inline std::vector<std::string> merit_column_names() {
    const auto& cols = result_columns();
    return {cols.begin() + 1, cols.end()}; // every column except lambda
}

inline void print_run_summary(const SweepResult& result) {
    const SweepSummary s = summarize(result);
    std::cout << "target ground energy: " << format_number(result.target_ground_energy)
              << "  degeneracy: " << result.target_ground_degeneracy << "\n";
    std::cout << "min gap: " << format_number(s.min_gap.gap)
              << " at lambda = " << format_number(s.min_gap.lambda) << "\n";
    std::cout << "mean fidelity: " << format_number(s.mean_fidelity) << "\n";
    for (const PeakEntropy& p : s.peak_entropies) {
        std::cout << "peak entropy " << p.partition << ": " << format_number(p.value)
                  << " at lambda = " << format_number(p.lambda) << "\n";
    }
    std::cout << "final fidelity: " << format_number(s.final_record.merits.fidelity) << "\n";
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv) {
    CLI::App app{"exact-diagonalization annealing sweeps for four-site spin networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int lambda_points = 0; // 0 = take the config's value

    auto* run = app.add_subcommand("run", "sweep one configuration; write results.csv and "
                                          "summary.json");
    run->add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory (default: config out_dir or \".\")");
    run->add_option("--lambda-points", lambda_points, "override the sweep grid size")
        ->check(CLI::Range(2, 1 << 20));
    run->callback([&] {
        RunConfig cfg = load_config(config_path);
        if (lambda_points) cfg.sweep.lambda_points = lambda_points;
        const std::filesystem::path out =
            !out_dir.empty() ? out_dir : cfg.out_dir.value_or(".");
        std::filesystem::create_directories(out);
        const SweepResult result = run_sweep(cfg.graph, cfg.model, cfg.sweep);
        const auto results_path = (out / "results.csv").string();
        const auto summary_path = (out / "summary.json").string();
        write_results(result, results_path);
        write_summary(result, summary_path);
        detail::print_run_summary(result);
        std::cout << "wrote " << results_path << " and " << summary_path << "\n";
    });

    std::vector<std::string> merits;
    auto* compare = app.add_subcommand("compare", "sweep all four presets; write per-merit "
                                                  "plot data");
    compare->add_option("--config", config_path, "JSON run configuration (preset graph form)")
        ->required()
        ->check(CLI::ExistingFile);
    compare->add_option("--out", out_dir,
                        "output directory (default: config out_dir or \".\")");
    compare->add_option("--lambda-points", lambda_points, "override the sweep grid size")
        ->check(CLI::Range(2, 1 << 20));
    compare->add_option("--merit", merits, "merit columns to emit (default: gap, entropy_2_2, "
                                           "magnetization, coherence_l1, fidelity)")
        ->check(CLI::IsMember(detail::merit_column_names()));
    compare->callback([&] {
        std::ifstream in(config_path);
        if (!in) throw io_error("cannot read config file: " + config_path);
        nlohmann::json base;
        try {
            base = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw config_error("config parse error in " + config_path + ": " + e.what());
        }
        if (!base.is_object() || !base.contains("graph") || !base.at("graph").is_object() ||
            !base.at("graph").contains("preset") || !base.at("graph").contains("J")) {
            throw config_error("compare requires the preset graph form with uniform \"J\" "
                               "(the preset name is swept over all four topologies)");
        }
        std::optional<std::string> cfg_out_dir;
        std::vector<std::pair<std::string, SweepResult>> results;
        for (const std::string& name : preset_names()) {
            nlohmann::json j = base;
            j["graph"]["preset"] = name;
            RunConfig cfg = config_from_json(j);
            if (lambda_points) cfg.sweep.lambda_points = lambda_points;
            cfg_out_dir = cfg.out_dir;
            results.emplace_back(name, run_sweep(cfg.graph, cfg.model, cfg.sweep));
        }
        const std::filesystem::path out =
            !out_dir.empty() ? out_dir : cfg_out_dir.value_or(".");
        std::filesystem::create_directories(out);
        if (merits.empty()) {
            merits.assign(std::begin(detail::k_default_merits),
                          std::end(detail::k_default_merits));
        }
        for (const std::string& merit : merits) {
            const auto path = (out / ("compare_" + merit + ".dat")).string();
            emit_plot_data(results, merit, path);
            std::cout << "wrote " << path << "\n";
        }
        std::cout << "preset        edges  min_gap            at_lambda          "
                     "mean_fidelity\n";
        for (const auto& [name, result] : results) {
            const SweepSummary s = summarize(result);
            std::printf("%-12s %6zu  %-17s  %-17s  %s\n", name.c_str(),
                        result.graph.edges.size(), format_number(s.min_gap.gap).c_str(),
                        format_number(s.min_gap.lambda).c_str(),
                        format_number(s.mean_fidelity).c_str());
        }
    });

    auto* presets = app.add_subcommand("presets", "list the built-in graph presets");
    presets->callback([] {
        for (const std::string& name : preset_names()) {
            std::cout << name << ":";
            for (const auto& [i, j] : preset_edge_pairs(name)) {
                std::cout << " (" << i << "," << j << ")";
            }
            std::cout << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qanneal
