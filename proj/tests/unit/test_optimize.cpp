#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "entdiag/io.hpp"
#include "entdiag/optimize.hpp"

using namespace entdiag;

TEST_CASE("zero-gradient start is a fixed point") {
    // all angles 0 with the pure-coupling hamiltonian: |0...0> is an eigenstate
    // of every sigma_z sigma_z term, so the gradient vanishes identically
    const HamiltonianModel H = build_nn_ising(6, 0.0);
    CircuitSpec spec = CircuitSpec::zeros(6, 3);
    OptimizerConfig cfg;
    cfg.max_steps = 50;
    const GroundSolution ground = ground_state(H);
    const OptimizationTrace trace = gradient_descent(spec, H, cfg, &ground);
    for (double p : trace.final_params) CHECK(p == 0.0);
    CHECK(trace.records.front().energy == doctest::Approx(6.0));
    CHECK(trace.records.back().energy == doctest::Approx(6.0));
}

TEST_CASE("first-step energy change matches the gradient-norm prediction") {
    // dE = -eta ||grad||^2 to first order; the residual is second order in eta
    const HamiltonianModel H = build_nn_ising(8, 2.0);
    auto first_step_error = [&](uint64_t seed, double eta) {
        OptimizerConfig cfg;
        cfg.eta = eta;
        cfg.max_steps = 2;
        cfg.record_every = 1;
        CircuitSpec spec = CircuitSpec::random(8, 6, Architecture::Brickwall, seed);
        const OptimizationTrace trace = gradient_descent(spec, H, cfg);
        const auto& r0 = trace.records[0];
        const auto& r1 = trace.records[1];
        const double gsq = r0.grad_norm * r0.grad_norm;
        const double err = std::abs((r1.energy - r0.energy) + eta * gsq);
        return std::pair{err, gsq};
    };
    for (uint64_t seed : {3ull, 4ull, 5ull}) {
        const auto [err, gsq] = first_step_error(seed, 0.005);
        CHECK(err <= 0.1 * 0.005 * gsq);  // first-order term dominates
        // halving eta shrinks the residual quadratically
        const auto [err_half, gsq2] = first_step_error(seed, 0.0025);
        CHECK(gsq2 == doctest::Approx(gsq));
        CHECK(err_half == doctest::Approx(err / 4.0).epsilon(0.15));
    }
}

TEST_CASE("trace structure: recorded steps strictly increase, seeds deterministic") {
    const HamiltonianModel H = build_nn_ising(6, 1.0);
    const GroundSolution ground = ground_state(H);
    CircuitSpec spec = CircuitSpec::random(6, 4, Architecture::Brickwall, 12);
    OptimizerConfig cfg;
    cfg.max_steps = 95;
    const OptimizationTrace a = gradient_descent(spec, H, cfg, &ground);
    const OptimizationTrace b = gradient_descent(spec, H, cfg, &ground);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].energy == b.records[i].energy);  // bit-identical
        if (i) CHECK(a.records[i].tau > a.records[i - 1].tau);
    }
    CHECK(a.records.back().tau == 95);
    CHECK(a.ground_diagnostics);
    CHECK(std::isfinite(a.records.front().trace_dist));
}

TEST_CASE("short ising descent mostly decreases the energy") {
    const HamiltonianModel H = build_nn_ising(8, 2.0);
    CircuitSpec spec = CircuitSpec::random(8, 8, Architecture::Brickwall, 21);
    OptimizerConfig cfg;
    cfg.max_steps = 500;
    const OptimizationTrace trace = gradient_descent(spec, H, cfg);
    CHECK(trace.records.back().energy < trace.records.front().energy);
    CHECK(trace.energy_increase_steps < 5);  // < 1% of steps
}

TEST_CASE("monotone descent holds across an ensemble") {
    const HamiltonianModel H = build_nn_ising(8, 1.0);
    OptimizerConfig cfg;
    cfg.max_steps = 2000;
    cfg.record_every = 500;
    int increases = 0, steps = 0;
    for (uint64_t seed = 0; seed < 5; ++seed) {
        CircuitSpec spec = CircuitSpec::random(8, 12, Architecture::Brickwall, 40 + seed);
        const OptimizationTrace trace = gradient_descent(spec, H, cfg);
        increases += trace.energy_increase_steps;
        steps += trace.steps_taken;
    }
    CHECK(increases < steps / 100);
}

TEST_CASE("non-finite energy aborts with a diagnostic failure") {
    // poisoned coefficient drives the energy to NaN on the first evaluation
    const HamiltonianModel H(HamiltonianKind::NNIsing, 6,
                             {{std::numeric_limits<double>::quiet_NaN(), 1u, 0u}});
    CircuitSpec spec = CircuitSpec::random(6, 4, Architecture::Brickwall, 2);
    OptimizerConfig cfg;
    cfg.max_steps = 50;
    CHECK_THROWS_AS(gradient_descent(spec, H, cfg), DescentFailure);
    try {
        gradient_descent(spec, H, cfg);
    } catch (const DescentFailure& e) {
        CHECK(e.step == 0);
        CHECK(e.params.size() == 24);  // the dump carries the offending parameters
    }
}

TEST_CASE("eta guards and stop criterion") {
    const HamiltonianModel H = build_nn_ising(6, 1.0);
    CircuitSpec spec = CircuitSpec::random(6, 4, Architecture::Brickwall, 1);
    OptimizerConfig bad;
    bad.eta = 0.0;
    CHECK_THROWS_AS(gradient_descent(spec, H, bad), std::invalid_argument);

    OptimizerConfig stopper;
    stopper.max_steps = 10000;
    stopper.stop_grad_norm = 0.5;
    const OptimizationTrace trace = gradient_descent(spec, H, stopper);
    CHECK(trace.steps_taken < 10000);
}

TEST_CASE("success sweep aggregates by depth with deterministic seeds") {
    const HamiltonianModel H = build_nn_ising(6, 2.0);
    OptimizerConfig cfg;
    cfg.max_steps = 400;
    cfg.record_every = 100;
    const SweepResult sweep =
        success_sweep(6, H, {2, 4}, 3, cfg, Architecture::Brickwall, 1.0, 0.5, 99, 1);
    REQUIRE(sweep.cells.size() == 2);
    CHECK(sweep.cells[0].L == 2);
    CHECK(sweep.cells[1].L == 4);
    CHECK(sweep.cells[0].seed_count == 3);
    for (const auto& c : sweep.cells) {
        CHECK(c.success_rate >= 0.0);
        CHECK(c.success_rate <= 1.0);
        CHECK(c.after_gap_mean <= c.before_gap_mean + 1e-9);
    }
    const std::string j = sweep_json(sweep);
    CHECK(j.find("\"success_rate\"") != std::string::npos);
    CHECK_THROWS_AS(success_sweep(6, H, {4, 2}, 3, cfg), std::invalid_argument);
}

TEST_CASE("eta has to move something: evolution curves flat at eta -> 0") {
    const HamiltonianModel H = build_nn_ising(6, 1.0);
    OptimizerConfig cfg;
    cfg.eta = 1e-300;  // effectively zero step
    cfg.max_steps = 30;
    cfg.record_every = 10;
    const auto curves = entanglement_evolution(6, {4}, {&H}, cfg, 5, 1);
    REQUIRE(curves.size() == 1);
    for (double r2 : curves[0].renyi_2)
        CHECK(r2 == doctest::Approx(curves[0].renyi_2.front()).epsilon(1e-9));
}

TEST_CASE("trace csv layout") {
    const HamiltonianModel H = build_nn_ising(6, 1.0);
    CircuitSpec spec = CircuitSpec::random(6, 3, Architecture::Brickwall, 8);
    OptimizerConfig cfg;
    cfg.max_steps = 20;
    cfg.record_every = 5;
    std::vector<OptimizationTrace> traces{gradient_descent(spec, H, cfg)};
    const std::string path = "trace_test.csv";
    write_trace_csv(traces, path);
    const std::string text = read_text_file(path);
    CHECK(text.rfind("seed,tau,energy,gap,grad_norm,renyi2,trace_dist\n", 0) == 0);
    std::remove(path.c_str());
}
