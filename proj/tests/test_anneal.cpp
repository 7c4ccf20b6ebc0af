#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qanneal/anneal.hpp"

using namespace qanneal;

namespace {

SweepResult sweep_preset(const char* preset, Model model, double J = -1.0, double h = 1.0,
                         SweepConfig cfg = {}) {
    ModelSpec spec;
    spec.model = model;
    return run_sweep(preset_topology(preset, J, h), spec, cfg);
}

} // namespace

TEST_CASE("sweep grid layout", "[anneal]") {
    SweepConfig cfg;
    cfg.lambda_points = 5;
    const SweepResult r = sweep_preset("chain", Model::ising, -1.0, 1.0, cfg);

    REQUIRE(r.records.size() == 5);
    CHECK(r.records.front().lambda == 0.0);
    CHECK(r.records.back().lambda == 1.0);
    for (int k = 0; k < 5; ++k) CHECK(r.records[k].lambda == k / 4.0);
}

TEST_CASE("driver endpoint", "[anneal]") {
    SweepConfig cfg;
    cfg.lambda_points = 21;
    const SweepResult r = sweep_preset("complete", Model::ising, -1.0, 1.0, cfg);
    const SweepRecord& first = r.records.front();

    // at lambda = 0 the state is the uniform superposition over 16 basis states
    CHECK(first.gap == Catch::Approx(2.0).margin(1e-12));
    CHECK(first.merits.coherence_l1 == Catch::Approx(15.0).margin(1e-10));
    CHECK(first.merits.magnetization == Catch::Approx(0.0).margin(1e-12));
    CHECK(first.merits.fidelity == Catch::Approx(1.0 / 16.0).margin(1e-12));
    CHECK(first.ground_degeneracy == 1);
}

TEST_CASE("target endpoint", "[anneal]") {
    const SweepResult r = sweep_preset("complete", Model::ising);
    const SweepRecord& last = r.records.back();

    CHECK(r.target_ground_energy == Catch::Approx(-10.0).margin(1e-12));
    CHECK(r.target_ground_degeneracy == 1);
    CHECK(last.e0 == Catch::Approx(r.target_ground_energy).margin(1e-12));
    CHECK(last.merits.fidelity == Catch::Approx(1.0).margin(1e-12));
    CHECK(last.merits.magnetization == Catch::Approx(-1.0).margin(1e-12));
    for (double s : last.merits.entropies) CHECK(std::abs(s) < 1e-12);
    CHECK(std::abs(last.merits.coherence_l1) < 1e-12);
}

TEST_CASE("minimum gap refinement", "[anneal]") {
    SECTION("refined value for the complete Ising sweep") {
        const SweepResult r = sweep_preset("complete", Model::ising);
        CHECK(r.min_gap.gap == Catch::Approx(1.27806019998).margin(1e-9));
        // the refined point can only improve on the grid minimum
        for (const SweepRecord& rec : r.records) CHECK(r.min_gap.gap <= rec.gap + 1e-15);
    }

    SECTION("without refinement the minimum sits on the grid") {
        SweepConfig cfg;
        cfg.refine_gap = false;
        const SweepResult r = sweep_preset("complete", Model::ising, -1.0, 1.0, cfg);
        const double steps = r.min_gap.lambda * 200.0;
        CHECK(steps == Catch::Approx(std::round(steps)).margin(1e-12));
    }
}

TEST_CASE("summary", "[anneal]") {
    const SweepResult r = sweep_preset("complete", Model::ising);
    const SweepSummary s = summarize(r);

    CHECK(s.mean_fidelity == Catch::Approx(0.751808384979).margin(1e-9));
    CHECK(s.min_gap.gap == r.min_gap.gap);
    REQUIRE(s.peak_entropies.size() == 3);
    CHECK(s.peak_entropies[0].partition == "2|2");
    CHECK(s.peak_entropies[1].partition == "1|3");
    CHECK(s.peak_entropies[2].partition == "3|1");
    CHECK(s.peak_entropies[0].value == Catch::Approx(0.0620461741912).margin(1e-9));
    CHECK(s.final_record.lambda == 1.0);

    SECTION("empty results cannot be summarized") {
        REQUIRE_THROWS_AS(summarize(SweepResult{}), validation_error);
    }
}

TEST_CASE("frozen sweep oracles", "[anneal]") {
    SECTION("Ising chain") {
        const SweepResult r = sweep_preset("chain", Model::ising);
        CHECK(r.min_gap.gap == Catch::Approx(1.37778435535).margin(1e-9));
        CHECK(summarize(r).mean_fidelity == Catch::Approx(0.674623891976).margin(1e-9));
    }

    SECTION("DM chain, no trigger") {
        const SweepResult r = sweep_preset("chain", Model::dm);
        CHECK(r.min_gap.gap == Catch::Approx(0.607007324272).margin(1e-9));
    }

    SECTION("DM square with the xx trigger at g=2") {
        ModelSpec spec;
        spec.model = Model::dm;
        spec.trigger = Trigger::xx;
        spec.trigger_strength = 2.0;
        const SweepResult r = run_sweep(preset_topology("square", -1.0, 1.0), spec, {});
        CHECK(r.min_gap.gap == Catch::Approx(1.53545132387).margin(1e-9));
    }
}

TEST_CASE("degenerate target handling", "[anneal]") {
    // The XY complete-graph target is exactly two-fold degenerate; the sweep
    // must flag it and resolve the fidelity target deterministically.
    const SweepResult r = sweep_preset("complete", Model::xy);
    CHECK(r.target_ground_degeneracy == 2);
    CHECK(summarize(r).mean_fidelity == Catch::Approx(0.409945800557).margin(1e-9));
}

TEST_CASE("parallel sweeps match sequential ones exactly", "[anneal]") {
    SweepConfig seq;
    seq.lambda_points = 51;
    seq.threads = 1;
    SweepConfig par = seq;
    par.threads = 4;

    const SweepResult a = sweep_preset("square", Model::xy, -1.0, 1.0, seq);
    const SweepResult b = sweep_preset("square", Model::xy, -1.0, 1.0, par);

    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
        CHECK(a.records[k].lambda == b.records[k].lambda);
        CHECK(a.records[k].e0 == b.records[k].e0);
        CHECK(a.records[k].e1 == b.records[k].e1);
        CHECK(a.records[k].gap == b.records[k].gap);
        CHECK(a.records[k].ground_degeneracy == b.records[k].ground_degeneracy);
        CHECK(a.records[k].merits.entropies == b.records[k].merits.entropies);
        CHECK(a.records[k].merits.magnetization == b.records[k].merits.magnetization);
        CHECK(a.records[k].merits.coherence_l1 == b.records[k].merits.coherence_l1);
        CHECK(a.records[k].merits.fidelity == b.records[k].merits.fidelity);
    }
    CHECK(a.min_gap.lambda == b.min_gap.lambda);
    CHECK(a.min_gap.gap == b.min_gap.gap);
}

TEST_CASE("sweep configuration errors", "[anneal]") {
    const SpinGraph g = preset_topology("chain", -1.0, 1.0);
    ModelSpec spec;
    spec.model = Model::ising;

    SECTION("grid must have at least two points") {
        SweepConfig cfg;
        cfg.lambda_points = 1;
        REQUIRE_THROWS_AS(run_sweep(g, spec, cfg), validation_error);
    }

    SECTION("a strength without a trigger is a contradiction") {
        ModelSpec bad = spec;
        bad.trigger_strength = 1.0;
        REQUIRE_THROWS_AS(run_sweep(g, bad, {}), validation_error);
    }

    SECTION("negative thread counts are rejected") {
        SweepConfig cfg;
        cfg.threads = -1;
        REQUIRE_THROWS_AS(run_sweep(g, spec, cfg), validation_error);
    }

    SECTION("custom partition lists flow through to the merit records") {
        SweepConfig cfg;
        cfg.lambda_points = 3;
        cfg.partitions = {bipartition_1_3()};
        const SweepResult r = run_sweep(g, spec, cfg);
        REQUIRE(r.records.front().merits.entropies.size() == 1);
    }
}
