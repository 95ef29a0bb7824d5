// Acceptance suite: one criterion per invocation (argv[1] = 1..11), or all
// when no argument is given. Prints one pass/fail line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "entdiag/chaos.hpp"
#include "entdiag/circuit.hpp"
#include "entdiag/entanglement.hpp"
#include "entdiag/gradient.hpp"
#include "entdiag/ground.hpp"
#include "entdiag/growth.hpp"
#include "entdiag/hamiltonian.hpp"
#include "entdiag/io.hpp"
#include "entdiag/optimize.hpp"
#include "entdiag/rng.hpp"

using namespace entdiag;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool check(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    return ok;
}

bool check_near(double got, double want, double tol, const std::string& what) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s: got %.6g, want %.6g +- %.3g", what.c_str(), got, want, tol);
    return check(std::abs(got - want) <= tol, buf);
}

std::vector<uint64_t> member_seeds(uint64_t master, int count) {
    std::vector<uint64_t> seeds(count);
    for (int i = 0; i < count; ++i) seeds[i] = rng::member_seed(master, i);
    return seeds;
}

// ---------------------------------------------------------------- criterion 1

bool criterion_exact_formula() {
    const auto start = Clock::now();
    bool ok = true;
    for (int n : {4, 6, 8, 10}) {
        for (double g : {0.0, 0.5, 1.0, 2.0, 2.5}) {
            const HamiltonianModel H = build_nn_ising(n, g);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense(), Eigen::EigenvaluesOnly);
            const double ed = es.eigenvalues()(0);
            const double formula = exact_nn_ising_energy(n, g);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "n=%d g=%.1f |ED - formula| = %.3g", n, g,
                          std::abs(ed - formula));
            ok &= check(std::abs(ed - formula) <= 1e-8, buf);
        }
    }
    const double elapsed = seconds_since(start);
    ok &= check(elapsed < 60.0, "runtime " + format_double(elapsed) + "s < 60s");
    return ok;
}

// ------------------------------------------------------------- criteria 2 & 3

bool criterion_table_reproduction(bool include_n12) {
    const auto start = Clock::now();
    bool ok = true;
    const auto seeds = member_seeds(424242, 50);

    GrowthCurve c8 = run_growth(8, Architecture::Brickwall, seeds, 250, all_entropy_kinds());
    if (include_n12) {
        const GrowthFit see = fit_timescales(c8, EntropyKind::SEE);
        const GrowthFit r2 = fit_timescales(c8, EntropyKind::R2);
        ok &= check_near(see.velocity, 0.3669, 0.05, "v_SEE(n=8)");
        ok &= check_near(r2.velocity, 0.2771, 0.05, "v_R2(n=8)");
        ok &= check_near(r2.saturation, 2.9722, 0.1, "r(n=8, R2)");
        ok &= check_near(see.L_saturation, 29.0, 8.0, "L_s(n=8, S_EE)");

        GrowthCurve c12 = run_growth(12, Architecture::Brickwall, seeds, 250, all_entropy_kinds());
        const GrowthFit see12 = fit_timescales(c12, EntropyKind::SEE);
        const GrowthFit r212 = fit_timescales(c12, EntropyKind::R2);
        ok &= check_near(see12.velocity, 0.3533, 0.05, "v_SEE(n=12)");
        ok &= check_near(r212.velocity, 0.2645, 0.05, "v_R2(n=12)");
        ok &= check_near(r212.saturation, 4.9896, 0.1, "r(n=12, R2)");
        const double elapsed = seconds_since(start);
        ok &= check(elapsed < 1800.0, "runtime " + format_double(elapsed) + "s < 30min");
        return ok;
    }

    // criterion 3: Table II spot checks at n=8
    const GrowthFit r4 = fit_timescales(c8, EntropyKind::R4);
    const GrowthFit smax = fit_timescales(c8, EntropyKind::Smax);
    ok &= check_near(r4.velocity, 0.2232, 0.05, "v_R4(n=8)");
    ok &= check_near(r4.L_linear, 9.0, 8.0, "L_l(n=8, R4)");
    ok &= check_near(r4.saturation, 2.7084, 0.1, "r(n=8, R4)");
    ok &= check_near(r4.L_saturation, 29.0, 8.0, "L_s(n=8, R4)");
    ok &= check_near(smax.saturation, 3.9985, 0.05, "r(n=8, S_max)");
    return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_theorem_sandwich() {
    int violations = 0, samples = 0;
    for (int L : {2, 30, 250}) {
        for (int i = 0; i < 67 && samples < 200; ++i, ++samples) {
            const uint64_t seed = rng::member_seed(777000 + L, i);
            const StateVector psi =
                run_circuit(CircuitSpec::random(8, L, Architecture::Brickwall, seed));
            const BoundsReport rep = theorem_bounds(partial_trace(psi, 4));
            if (!rep.sandwich_holds(1e-12)) ++violations;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "L_k <= dist <= U over %d states: %d violations", samples,
                  violations);
    return check(samples == 200 && violations == 0, buf);
}

// ---------------------------------------------------------------- criterion 5

bool criterion_continuity_suite() {
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const int La = 2 + static_cast<int>(rng::uniform(rng::hash(888, 1, i)) * 60);
        const int Lb = 2 + static_cast<int>(rng::uniform(rng::hash(888, 2, i)) * 60);
        const StateVector psi = run_circuit(
            CircuitSpec::random(8, La, Architecture::Brickwall, rng::member_seed(5150, 2 * i)));
        const StateVector phi = run_circuit(
            CircuitSpec::random(8, Lb, Architecture::Brickwall, rng::member_seed(5150, 2 * i + 1)));
        const ContinuityReport rep = continuity_checks(psi, phi, 4);
        if (!rep.all_hold(1e-9)) ++violations;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "pinsker/fannes-audenaert/renyi/monotonicity over 100 pairs: %d violations",
                  violations);
    return check(violations == 0, buf);
}

// ---------------------------------------------------------------- criterion 6

bool criterion_gradient_correctness() {
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        HamiltonianModel H = [&]() {
            switch (i % 3) {
                case 0: return build_nn_ising(8, 0.5 + 0.5 * (i % 5));
                case 1: return build_long_range_ising(8, 0.5 + 0.25 * (i % 4), 1.0);
                default: return build_syk4(8, 100 + i);
            }
        }();
        CircuitSpec spec = CircuitSpec::random(8, 6, Architecture::Brickwall, 9000 + i);
        const auto adjoint = energy_gradient(spec, H);

        std::vector<double> params(spec.params().begin(), spec.params().end());
        CircuitSpec work = spec;
        double scale = 1e-12;
        std::vector<double> fd(params.size());
        const double h = 1e-5;
        for (std::size_t k = 0; k < params.size(); ++k) {
            std::vector<double> shifted = params;
            shifted[k] = params[k] + h;
            work.set_params(shifted);
            const double ep = energy(run_circuit(work), H);
            shifted[k] = params[k] - h;
            work.set_params(shifted);
            const double em = energy(run_circuit(work), H);
            fd[k] = (ep - em) / (2.0 * h);
            scale = std::max(scale, std::abs(fd[k]));
        }
        for (std::size_t k = 0; k < params.size(); ++k)
            worst = std::max(worst, std::abs(adjoint[k] - fd[k]) / scale);
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "25 instances (n=8, L=6): max relative error %.3g", worst);
    return check(worst <= 1e-6, buf);
}

// ---------------------------------------------------------------- criterion 7

SweepResult sweep(int n, const HamiltonianModel& H, const std::vector<int>& depths, int seeds,
                  Architecture arch, double p, uint64_t master) {
    OptimizerConfig cfg;
    cfg.record_every = 1000;
    return success_sweep(n, H, depths, seeds, cfg, arch, p, 0.1, master, 0);
}

// Onset of the persistent failure region: the smallest grid depth from which
// the success rate stays below 100% for every deeper grid point. Small-L
// expressibility failures (too few parameters to reach the target at all)
// recover at larger L and are not part of this region; +inf when full success
// returns at the deep end.
double failure_onset(const SweepResult& result) {
    double onset = std::numeric_limits<double>::infinity();
    for (auto it = result.cells.rbegin(); it != result.cells.rend(); ++it) {
        if (it->success_rate >= 1.0) break;
        onset = it->L;
    }
    return onset;
}

bool criterion_optimization_phenomenology() {
    const auto start = Clock::now();
    bool ok = true;

    // (a) nearest-neighbor ising at g=2, n=8, shallow circuit
    const HamiltonianModel ising2 = build_nn_ising(8, 2.0);
    const SweepResult g2 = sweep(8, ising2, {8}, 20, Architecture::Brickwall, 1.0, 2001);
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "(a) g=2 n=8 L=8: success %.0f%% >= 90%%",
                      100.0 * g2.cells[0].success_rate);
        ok &= check(g2.cells[0].success_rate >= 0.9, buf);
    }

    // (b) the depth sweep at the paper's system size n=12, where the
    // work/fail transition sits inside {8,24,48,96}; at n=8 the deep grid is
    // over-parameterized (768 parameters vs a 512-dimensional real state
    // space) and every seed converges, so the claimed 0% endpoint only
    // exists at n=12
    {
        const HamiltonianModel ising12 = build_nn_ising(12, 2.0);
        const SweepResult b =
            sweep(12, ising12, {8, 24, 48, 96}, 20, Architecture::Brickwall, 1.0, 2012);
        bool mono = true;
        for (std::size_t i = 1; i < b.cells.size(); ++i)
            mono &= b.cells[i].success_rate <= b.cells[i - 1].success_rate + 1e-12;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "(b) n=12 rates {%.2f, %.2f, %.2f, %.2f} non-increasing, 0 at L=96",
                      b.cells[0].success_rate, b.cells[1].success_rate, b.cells[2].success_rate,
                      b.cells[3].success_rate);
        ok &= check(mono && b.cells[3].success_rate == 0.0, buf);
    }

    // (c) syk instance: no seed reaches the window at any depth
    const HamiltonianModel syk = build_syk4(8, 31415);
    const SweepResult syk_sweep = sweep(8, syk, {8, 24, 48}, 20, Architecture::Brickwall, 1.0, 2003);
    {
        double max_rate = 0.0, min_gap = 1e300;
        for (const auto& c : syk_sweep.cells) {
            max_rate = std::max(max_rate, c.success_rate);
            min_gap = std::min(min_gap, c.after_gap_mean);
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "(c) syk success rate 0 at all L (max %.2f, min mean gap %.3g)",
                      max_rate, min_gap);
        ok &= check(max_rate == 0.0, buf);
    }

    // (d) + (e): g=1 grids for the restricted and stochastic architectures
    const HamiltonianModel ising1 = build_nn_ising(8, 1.0);
    const std::vector<int> grid{4, 8, 12, 16, 20, 24, 32, 40, 48, 64};
    const SweepResult plain = sweep(8, ising1, grid, 10, Architecture::Brickwall, 1.0, 2005);
    const SweepResult restricted = sweep(8, ising1, grid, 10, Architecture::Restricted, 1.0, 2007);
    {
        const double onset_plain = failure_onset(plain);
        const double onset_restricted = failure_onset(restricted);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "(d) restricted onset L=%g < unconstrained onset L=%g",
                      onset_restricted, onset_plain);
        ok &= check(onset_restricted < onset_plain, buf);
    }
    {
        double edge = 0.0;  // largest depth with any unconstrained success
        for (const auto& c : plain.cells)
            if (c.success_rate > 0.0) edge = c.L;
        std::vector<int> beyond;
        for (int L : {48, 64, 96, 128})
            if (L > edge) beyond.push_back(L);
        const SweepResult stochastic =
            sweep(8, ising1, beyond, 10, Architecture::Stochastic, 0.5, 2009);
        double best = 0.0;
        int best_L = 0;
        for (const auto& c : stochastic.cells)
            if (c.success_rate > 0.0) {
                best = c.success_rate;
                best_L = c.L;
            }
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "(e) p=1/2 succeeds beyond the unconstrained edge L=%g (rate %.2f at L=%d)",
                      edge, best, best_L);
        ok &= check(best > 0.0, buf);
    }

    const double elapsed = seconds_since(start);
    ok &= check(elapsed < 7200.0, "runtime " + format_double(elapsed) + "s < 2h");
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_entanglement_evolution() {
    bool ok = true;
    OptimizerConfig cfg;
    cfg.record_every = 10;
    const HamiltonianModel ising = build_nn_ising(8, 2.0);
    const HamiltonianModel syk = build_syk4(8, 31415);
    const auto curves = entanglement_evolution(8, {12}, {&ising, &syk}, cfg, 3001, 0);

    const EvolutionCurve* ising_curve = nullptr;
    const EvolutionCurve* syk_curve = nullptr;
    for (const auto& c : curves) {
        if (c.hamiltonian == "nn_ising") ising_curve = &c;
        if (c.hamiltonian == "syk4") syk_curve = &c;
    }
    if (!ising_curve || !syk_curve) return check(false, "missing evolution curves");

    // ising target: the renyi-2 gap closes within 2e3 steps and stays closed
    double close_tau = -1.0;
    for (std::size_t i = 0; i < ising_curve->taus.size(); ++i) {
        if (std::abs(ising_curve->renyi_2[i] - ising_curve->ground_renyi_2) < 0.1) {
            close_tau = ising_curve->taus[i];
            break;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "ising gap < 0.1 bits first reached at tau=%g (<= 2000)",
                  close_tau);
    ok &= check(close_tau >= 0.0 && close_tau <= 2000.0, buf);
    const double final_gap =
        std::abs(ising_curve->renyi_2.back() - ising_curve->ground_renyi_2);
    ok &= check(final_gap < 0.1, "ising final gap " + format_double(final_gap) + " < 0.1");

    // syk target: the gap never closes and is non-decreasing over the last 5e3 steps
    bool closed = false, monotone = true;
    double prev = -1.0;
    for (std::size_t i = 0; i < syk_curve->taus.size(); ++i) {
        const double gap = std::abs(syk_curve->renyi_2[i] - syk_curve->ground_renyi_2);
        closed |= gap < 0.1;
        if (syk_curve->taus[i] >= 5000) {
            if (prev >= 0.0 && gap < prev - 1e-3) monotone = false;
            prev = gap;
        }
    }
    ok &= check(!closed, "syk gap never enters the 0.1 window");
    ok &= check(monotone, "syk gap non-decreasing over the final 5000 steps");
    return ok;
}

// ---------------------------------------------------------------- criterion 9

Eigen::Matrix4d charge_matrix(double q1, double q2) {
    Eigen::Matrix4d Q;
    Q << q1 + q2, 0, 0, 0,
         0, q1, q2, 0,
         0, q2, q1, 0,
         0, 0, 0, q1 + q2;
    return Q;
}

Eigen::Matrix4d pair_gate(double ti, double tj) {
    Eigen::Matrix2d Ri, Rj;
    Ri << std::cos(ti), std::sin(ti), -std::sin(ti), std::cos(ti);
    Rj << std::cos(tj), std::sin(tj), -std::sin(tj), std::cos(tj);
    Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
    // qubit i on the low bit: R(theta_j) x R(theta_i)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) R(2 * a + c, 2 * b + d) = Rj(a, b) * Ri(c, d);
    Eigen::Matrix4d cz = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
    return cz * R;
}

bool criterion_charge_commutation() {
    bool ok = true;
    double worst_tied = 0.0, best_untied = 1e300;
    SplitStream stream(616);
    for (int i = 0; i < 100; ++i) {
        const double theta = stream.angle();
        const double q1 = stream.uniform() * 2.0 - 1.0;
        const double q2 = stream.uniform() * 2.0 - 1.0;
        const Eigen::Matrix4d gate = pair_gate(theta, theta);
        const Eigen::Matrix4d Q = charge_matrix(q1, q2);
        worst_tied = std::max(worst_tied, (gate * Q - Q * gate).norm());
    }
    ok &= check(worst_tied <= 1e-12,
                "tied angles: max ||[O,Q]||_F = " + format_double(worst_tied) + " <= 1e-12");

    for (int i = 0; i < 100; ++i) {
        const double ti = stream.angle();
        const double tj = stream.angle();
        const double q1 = 0.1 + stream.uniform();
        const double q2 = 0.1 + stream.uniform();
        const Eigen::Matrix4d gate = pair_gate(ti, tj);
        const Eigen::Matrix4d Q = charge_matrix(q1, q2);
        best_untied = std::min(best_untied, (gate * Q - Q * gate).norm());
    }
    ok &= check(best_untied > 1e-6,
                "generic angles: min ||[O,Q]||_F = " + format_double(best_untied) + " > 1e-6");
    return ok;
}

// --------------------------------------------------------------- criterion 10

bool criterion_chaos_diagnostics() {
    bool ok = true;

    // spectral form factor closed forms vs direct evaluation
    std::vector<double> taus(301);
    for (int i = 0; i <= 300; ++i) taus[i] = 30.0 * i / 300.0;
    {
        const SpectralFormFactor s = sff(partial_trace(StateVector::zero(8), 4), taus);
        double worst = 0.0;
        for (std::size_t i = 0; i < taus.size(); ++i)
            worst = std::max(worst, std::abs(s.values[i] - sff_pure_normalized(taus[i], 16)));
        ok &= check(worst <= 1e-10, "pure-state sff closed form, max dev " + format_double(worst));
    }
    {
        const SpectralFormFactor s = sff(ReducedState::maximally_mixed(4), taus);
        double worst = 0.0;
        for (double v : s.values) worst = std::max(worst, std::abs(v - 1.0));
        ok &= check(worst <= 1e-10, "maximally mixed sff == 1, max dev " + format_double(worst));
    }
    {
        // thermal spectrum: identity to 1e-10 plus the 1/N..1 bound chain
        const std::size_t N = 16;
        std::vector<double> lam(N);
        double z = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            lam[k] = std::exp(-static_cast<double>(k) / (N - 1));
            z += lam[k];
        }
        for (auto& l : lam) l /= z;
        const SpectralFormFactor s = sff_from_eigenvalues(lam, taus);
        double worst = 0.0;
        bool chain = true;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const double closed = sff_thermal_unnormalized(lam, taus[i]) / 256.0;
            worst = std::max(worst, std::abs(s.values[i] - closed));
            chain &= s.values[i] <= 1.0 + 1e-9 && s.values[i] >= 1.0 / N - 1e-9;
        }
        ok &= check(worst <= 1e-10, "thermal sff identity, max dev " + format_double(worst));
        ok &= check(chain, "thermal bound chain 1/N <= |Z|^2/Z(0)^2 <= 1 on the grid");
    }

    // norm conservation and the causal cone under brickwall evolution
    {
        CircuitSpec spec = CircuitSpec::random(8, 6, Architecture::Brickwall, 4004);
        SpreadOperator op;
        op.pauli = ProbePauli::Z;
        op.site = 0;
        const std::vector<int> times{0, 1, 2, 3, 4, 5, 6};
        const SpreadProfile profile = spread_profile(op, spec, times, ProbePauli::X);
        double norm_dev = 0.0, outside = 0.0;
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            norm_dev = std::max(norm_dev, std::abs(profile.norm_sq[ti] - profile.norm_sq[0]));
            const auto cone = causal_cone(spec, 0, times[ti]);
            for (int x = 0; x < 8; ++x)
                if (!cone[x]) outside = std::max(outside, profile.C[ti][x]);
        }
        ok &= check(norm_dev <= 1e-9,
                    "sum|h|^2 conserved under evolution, max dev " + format_double(norm_dev));
        ok &= check(outside <= 1e-12,
                    "C(x,t) outside the causal cone <= " + format_double(outside));
    }

    // walk-model identities are exact
    {
        bool exact = true;
        for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
            const WalkModel w = walk_model(p, 13.0);
            exact &= w.mean / w.t + 2.0 * p == 1.0;
            exact &= std::abs(w.sigma * w.sigma - 2.0 * p * (1.0 - p) * w.t) <= 1e-15;
        }
        const WalkModel half = walk_model(0.5, 9.0);
        exact &= half.mean == 0.0 && half.butterfly_velocity == 0.0;
        const WalkModel fifth = walk_model(0.2, 10.0);
        exact &= std::abs(fifth.mean - 6.0) <= 1e-15;
        ok &= check(exact, "walk model: mu=(1-2p)t, sigma^2=2p(1-p)t, p=1/2 -> v_B=0");
    }
    return ok;
}

// --------------------------------------------------------------- criterion 11

bool run_cli(const std::string& args) {
#ifdef ENTDIAG_CLI_PATH
    const std::string cmd = std::string(ENTDIAG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
#else
    (void)args;
    return false;
#endif
}

bool criterion_reproducibility() {
    bool ok = true;
    const fs::path base = fs::temp_directory_path() / "entdiag_acceptance_repr";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string cfg_path = (base / "grow.json").string();
    write_text_file(cfg_path, R"({
        "experiment": "grow",
        "n": 8,
        "layers": 40,
        "seeds": 10,
        "master_seed": 77,
        "out_dir": "unused"
    })");

    const std::string d1 = (base / "w1").string(), d2 = (base / "w8").string(),
                      d3 = (base / "w1b").string();
    ok &= check(run_cli("grow --config " + cfg_path + " --out " + d1 + " --workers 1"),
                "cli grow run (workers=1)");
    ok &= check(run_cli("grow --config " + cfg_path + " --out " + d2 + " --workers 8"),
                "cli grow run (workers=8)");
    ok &= check(run_cli("grow --config " + cfg_path + " --out " + d3 + " --workers 1 --force"),
                "cli grow rerun (workers=1)");
    if (!ok) return false;

    const std::string a = read_text_file(d1 + "/growth_curve.csv");
    const std::string b = read_text_file(d2 + "/growth_curve.csv");
    const std::string c = read_text_file(d3 + "/growth_curve.csv");
    ok &= check(!a.empty() && a == b, "growth csv identical for workers {1, 8}");
    ok &= check(a == c, "growth csv identical across runs");

    // a second artifact kind: optimization traces
    const std::string ocfg = (base / "opt.json").string();
    write_text_file(ocfg, R"({
        "experiment": "optimize",
        "n": 6,
        "layers": 4,
        "seeds": 4,
        "master_seed": 9,
        "hamiltonian": {"kind": "nn_ising", "g": 1.0},
        "optimizer": {"max_steps": 300, "record_every": 50},
        "out_dir": "unused"
    })");
    const std::string o1 = (base / "o1").string(), o2 = (base / "o8").string();
    ok &= check(run_cli("optimize --config " + ocfg + " --out " + o1 + " --workers 1"),
                "cli optimize run (workers=1)");
    ok &= check(run_cli("optimize --config " + ocfg + " --out " + o2 + " --workers 8"),
                "cli optimize run (workers=8)");
    if (ok) {
        const std::string t1 = read_text_file(o1 + "/trace.csv");
        const std::string t2 = read_text_file(o2 + "/trace.csv");
        ok &= check(!t1.empty() && t1 == t2, "trace csv identical for workers {1, 8}");
    }
    fs::remove_all(base);
    return ok;
}

bool criterion2() { return criterion_table_reproduction(true); }
bool criterion3() { return criterion_table_reproduction(false); }

struct Criterion {
    int id;
    const char* name;
    bool (*run)();
};

const Criterion kCriteria[] = {
    {1, "exact Ising formula vs dense diagonalization", criterion_exact_formula},
    {2, "Table I reproduction at n=8 and n=12 (50 seeds)", criterion2},
    {3, "Table II spot checks at n=8", criterion3},
    {4, "trace-distance sandwich over 200 circuit states", criterion_theorem_sandwich},
    {5, "continuity inequalities over 100 state pairs", criterion_continuity_suite},
    {6, "adjoint gradient vs central differences", criterion_gradient_correctness},
    {7, "optimization phenomenology across depth and architecture",
     criterion_optimization_phenomenology},
    {8, "Renyi-2 evolution: ising closes, syk does not", criterion_entanglement_evolution},
    {9, "per-gate charge commutation on the tied-angle subspace", criterion_charge_commutation},
    {10, "chaos diagnostics: sff forms, norm conservation, cone, walk model",
     criterion_chaos_diagnostics},
    {11, "byte-identical outputs across runs and worker counts", criterion_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_ok = true;
    for (const auto& crit : kCriteria) {
        if (only != 0 && crit.id != only) continue;
        const auto start = Clock::now();
        bool ok = false;
        try {
            ok = crit.run();
        } catch (const std::exception& e) {
            std::printf("    FAIL exception: %s\n", e.what());
        }
        std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", crit.id, crit.name,
                    seconds_since(start));
        std::fflush(stdout);
        all_ok &= ok;
    }
    return all_ok ? 0 : 1;
}
