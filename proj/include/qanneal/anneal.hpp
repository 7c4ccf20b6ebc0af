#pragma once

#include <algorithm>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qanneal/errors.hpp"
#include "qanneal/graph.hpp"
#include "qanneal/merits.hpp"
#include "qanneal/operators.hpp"
#include "qanneal/spectrum.hpp"

namespace qanneal {

// Sweep controls; the grid is uniform on [0, 1] inclusive of both ends.
struct SweepConfig {
    int lambda_points = 201;
    std::vector<Bipartition> partitions = {bipartition_2_2(), bipartition_1_3(),
                                           bipartition_3_1()};
    double degeneracy_rel_tol = k_default_degeneracy_rel_tol;
    bool refine_gap = true;
    double refine_tol = k_default_refine_tol;
    int threads = 1; // 0 = hardware concurrency
};

// One grid point: energies, gap, degeneracy flag, and all figures of merit.
struct SweepRecord {
    double lambda = 0.0;
    double e0 = 0.0;
    double e1 = 0.0;
    double gap = 0.0;
    int ground_degeneracy = 0;
    MeritSet merits;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    MinGap min_gap;
    double target_ground_energy = 0.0;
    int target_ground_degeneracy = 0;
    // Config echo: everything needed to reproduce the run.
    SpinGraph graph;
    ModelSpec model;
    SweepConfig sweep;
};

namespace detail {

inline void validate_sweep_config(const SweepConfig& cfg, int n_sites) {
    if (cfg.lambda_points < 2) {
        throw validation_error("lambda_points must be >= 2, got " +
                               std::to_string(cfg.lambda_points));
    }
    if (cfg.partitions.empty()) throw validation_error("partitions must be non-empty");
    for (const Bipartition& p : cfg.partitions) validate_bipartition(p, n_sites);
    if (!(cfg.degeneracy_rel_tol > 0.0)) {
        throw validation_error("degeneracy_rel_tol must be positive");
    }
    if (!(cfg.refine_tol > 0.0)) throw validation_error("refine_tol must be positive");
    if (cfg.threads < 0) throw validation_error("threads must be >= 0");
}

inline int resolve_threads(int requested, int n_points) {
    int t = requested == 0 ? int(std::thread::hardware_concurrency()) : requested;
    if (t < 1) t = 1;
    return std::min(t, n_points);
}

template <typename Error>
[[noreturn]] inline void rethrow_at_lambda(const Error& e, double lambda) {
    throw Error(std::string(e.what()) + " (at lambda=" + std::to_string(lambda) + ")");
}

} // namespace detail

// Full experiment: build driver/target/trigger, diagonalize along the lambda
// grid, compute every merit per point, and locate (optionally refine) the
// minimum gap. Records are a pure function of lambda: results are identical
// regardless of evaluation order or thread count.
inline SweepResult run_sweep(const SpinGraph& graph, const ModelSpec& spec,
                             const SweepConfig& cfg = {}) {
    detail::validate_sweep_config(cfg, graph.n_sites);
    if (spec.trigger == Trigger::none && spec.trigger_strength != 0.0) {
        throw validation_error("trigger_strength must be zero when trigger is none");
    }

    const HermitianOperator h0 = build_driver(graph.n_sites);
    const HermitianOperator h1 = build_target(graph, spec.model);
    const std::optional<HermitianOperator> ht =
        spec.trigger == Trigger::none
            ? std::nullopt
            : std::optional<HermitianOperator>(
                  build_trigger(graph, spec.trigger, spec.trigger_strength));

    // Fidelity target: the lambda = 1 ground state, resolved once per sweep.
    const EigenSystem target_system = diagonalize(h1);
    const int target_deg = ground_degeneracy(target_system, cfg.degeneracy_rel_tol);
    const QuantumState target = canonical_ground_state(target_system, cfg.degeneracy_rel_tol);

    const int n_points = cfg.lambda_points;
    std::vector<SweepRecord> records(n_points);
    auto compute_point = [&](int idx) {
        const double lambda = double(idx) / double(n_points - 1);
        try {
            const EigenSystem es = diagonalize(interpolate(h0, h1, ht, lambda));
            SweepRecord rec;
            rec.lambda = lambda;
            rec.e0 = es.energies[0];
            rec.e1 = es.energies[1];
            rec.gap = energy_gap(es);
            rec.ground_degeneracy = ground_degeneracy(es, cfg.degeneracy_rel_tol);
            // Merits always come from the solver's lowest state; degenerate
            // points are flagged by the degeneracy column, never averaged.
            rec.merits = compute_merits(es.states[0], cfg.partitions, target);
            records[idx] = std::move(rec);
        } catch (const validation_error& e) {
            detail::rethrow_at_lambda(e, lambda);
        } catch (const numerical_error& e) {
            detail::rethrow_at_lambda(e, lambda);
        }
    };

    const int n_threads = detail::resolve_threads(cfg.threads, n_points);
    if (n_threads == 1) {
        for (int idx = 0; idx < n_points; ++idx) compute_point(idx);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int idx = t; idx < n_points; idx += n_threads) compute_point(idx);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& p : failures) {
            if (p) std::rethrow_exception(p);
        }
    }

    SweepResult result;
    result.records = std::move(records);
    result.target_ground_energy = target_system.energies[0];
    result.target_ground_degeneracy = target_deg;
    result.graph = graph;
    result.model = spec;
    result.sweep = cfg;

    int best = 0;
    for (int idx = 1; idx < n_points; ++idx) {
        if (result.records[idx].gap < result.records[best].gap) best = idx;
    }
    result.min_gap = {result.records[best].lambda, result.records[best].gap};
    if (cfg.refine_gap) {
        const double lo = result.records[std::max(best - 1, 0)].lambda;
        const double hi = result.records[std::min(best + 1, n_points - 1)].lambda;
        const MinGap refined = refine_min_gap(
            [&](double lambda) { return energy_gap(diagonalize(interpolate(h0, h1, ht, lambda))); },
            lo, hi, cfg.refine_tol);
        if (refined.gap < result.min_gap.gap) result.min_gap = refined;
    }
    return result;
}

struct PeakEntropy {
    std::string partition;
    double value = 0.0;
    double lambda = 0.0;
};

struct SweepSummary {
    MinGap min_gap;
    double mean_fidelity = 0.0; // trapezoidal lambda average
    std::vector<PeakEntropy> peak_entropies;
    SweepRecord final_record;
};

inline SweepSummary summarize(const SweepResult& result) {
    if (result.records.empty()) throw validation_error("summarize requires a non-empty sweep");
    SweepSummary s;
    s.min_gap = result.min_gap;
    for (std::size_t i = 1; i < result.records.size(); ++i) {
        const SweepRecord& a = result.records[i - 1];
        const SweepRecord& b = result.records[i];
        s.mean_fidelity += 0.5 * (b.lambda - a.lambda) * (a.merits.fidelity + b.merits.fidelity);
    }
    for (std::size_t p = 0; p < result.sweep.partitions.size(); ++p) {
        PeakEntropy peak{bipartition_label(result.sweep.partitions[p]), 0.0, 0.0};
        bool first = true;
        for (const SweepRecord& rec : result.records) {
            if (first || rec.merits.entropies[p] > peak.value) {
                peak.value = rec.merits.entropies[p];
                peak.lambda = rec.lambda;
                first = false;
            }
        }
        s.peak_entropies.push_back(std::move(peak));
    }
    s.final_record = result.records.back();
    return s;
}

} // namespace qanneal
