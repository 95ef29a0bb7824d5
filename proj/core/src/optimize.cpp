#include "entdiag/optimize.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "entdiag/entanglement.hpp"
#include "entdiag/gradient.hpp"
#include "entdiag/io.hpp"
#include "entdiag/rng.hpp"
#include "entdiag/threadpool.hpp"

namespace entdiag {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct GroundReduction {
    std::optional<ReducedState> rho;
    double renyi_2 = kNaN;
};

GroundReduction reduce_ground(const GroundSolution* ground, int n) {
    GroundReduction out;
    if (!ground) return out;
    out.rho = partial_trace(ground->state, n / 2);
    out.renyi_2 = entropies(*out.rho).renyi_2;
    return out;
}

}  // namespace

OptimizationTrace gradient_descent(const CircuitSpec& spec, const HamiltonianModel& H,
                                   const OptimizerConfig& cfg, const GroundSolution* ground) {
    if (cfg.eta <= 0.0) throw std::invalid_argument("learning rate must be positive");
    if (cfg.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    const GroundReduction gr = reduce_ground(ground, spec.n());
    const double e_g = ground ? ground->energy : kNaN;

    AdjointEngine engine(spec, H);
    std::vector<double> params(spec.params().begin(), spec.params().end());
    std::vector<double> grad(spec.param_count(), 0.0);

    OptimizationTrace trace;
    trace.seed = spec.seed();
    trace.ground_diagnostics = ground != nullptr;

    auto record = [&](int tau, double e, double gnorm) {
        TraceRecord rec{tau, e, e - e_g, gnorm, kNaN, kNaN};
        const ReducedState rho = partial_trace(engine.last_state_complex(), spec.n() / 2);
        rec.renyi_2 = entropies(rho).renyi_2;
        if (gr.rho) rec.trace_dist = trace_distance(rho, *gr.rho);
        trace.records.push_back(rec);
    };

    double prev_e = 0.0;
    for (int tau = 0; tau < cfg.max_steps; ++tau) {
        engine.spec().set_params(params);
        const double e = engine.energy_and_gradient(grad);
        double gnorm_sq = 0.0;
        for (double g : grad) gnorm_sq += g * g;
        const double gnorm = std::sqrt(gnorm_sq);
        if (!std::isfinite(e) || !std::isfinite(gnorm))
            throw DescentFailure("non-finite energy or gradient at step " + std::to_string(tau),
                                 tau, params);
        if (tau > 0 && e > prev_e + 1e-9) ++trace.energy_increase_steps;
        prev_e = e;
        if (tau % cfg.record_every == 0) record(tau, e, gnorm);
        trace.steps_taken = tau + 1;
        if (cfg.stop_grad_norm > 0.0 && gnorm <= cfg.stop_grad_norm) break;
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= cfg.eta * grad[i];
    }

    engine.spec().set_params(params);
    const double e_final = engine.energy();
    if (trace.records.empty() || trace.records.back().tau != trace.steps_taken)
        record(trace.steps_taken, e_final, kNaN);
    trace.final_params = params;
    trace.final_energy = e_final;
    return trace;
}

SweepResult success_sweep(int n, const HamiltonianModel& H, const std::vector<int>& depths,
                          int seeds_per_depth, const OptimizerConfig& cfg, Architecture arch,
                          double p, double success_threshold, uint64_t master_seed, int workers) {
    for (std::size_t d = 1; d < depths.size(); ++d)
        if (depths[d] <= depths[d - 1]) throw std::invalid_argument("depths must be sorted ascending");
    if (seeds_per_depth < 1) throw std::invalid_argument("need at least one seed per depth");

    const GroundSolution ground = ground_state(H);

    struct CellResult {
        double before_gap, after_gap, before_dist, after_dist, before_r2, after_r2;
        bool success;
    };
    const std::size_t cells = depths.size() * static_cast<std::size_t>(seeds_per_depth);
    std::vector<CellResult> results(cells);

    parallel_for(cells, workers, [&](std::size_t task) {
        const int depth = depths[task / seeds_per_depth];
        const uint64_t seed = rng::member_seed(master_seed, task);
        CircuitSpec spec = CircuitSpec::random(n, depth, arch, seed, p);
        OptimizationTrace trace = gradient_descent(spec, H, cfg, &ground);
        const auto& first = trace.records.front();
        const auto& last = trace.records.back();
        results[task] = {first.gap, last.gap, first.trace_dist, last.trace_dist,
                         first.renyi_2, last.renyi_2, last.gap < success_threshold};
    });

    SweepResult sweep;
    sweep.hamiltonian = to_string(H.kind());
    sweep.n = n;
    sweep.architecture = arch;
    sweep.p = p;
    sweep.success_threshold = success_threshold;
    for (std::size_t d = 0; d < depths.size(); ++d) {
        SweepCell cell{};
        cell.L = depths[d];
        cell.seed_count = seeds_per_depth;
        int successes = 0;
        for (int s = 0; s < seeds_per_depth; ++s) {
            const auto& r = results[d * seeds_per_depth + s];
            cell.before_gap_mean += r.before_gap;
            cell.after_gap_mean += r.after_gap;
            cell.before_dist_mean += r.before_dist;
            cell.after_dist_mean += r.after_dist;
            cell.before_renyi2_mean += r.before_r2;
            cell.after_renyi2_mean += r.after_r2;
            successes += r.success ? 1 : 0;
        }
        const double m = seeds_per_depth;
        cell.before_gap_mean /= m;
        cell.after_gap_mean /= m;
        cell.before_dist_mean /= m;
        cell.after_dist_mean /= m;
        cell.before_renyi2_mean /= m;
        cell.after_renyi2_mean /= m;
        cell.success_rate = successes / m;
        sweep.cells.push_back(cell);
    }
    return sweep;
}

std::vector<EvolutionCurve> entanglement_evolution(int n, const std::vector<int>& depths,
                                                   const std::vector<const HamiltonianModel*>& hams,
                                                   const OptimizerConfig& cfg, uint64_t master_seed,
                                                   int workers) {
    std::vector<EvolutionCurve> curves(depths.size() * hams.size());
    std::vector<GroundSolution> grounds;
    grounds.reserve(hams.size());
    for (const auto* H : hams) grounds.push_back(ground_state(*H));

    parallel_for(curves.size(), workers, [&](std::size_t task) {
        const std::size_t h = task / depths.size();
        const std::size_t d = task % depths.size();
        CircuitSpec spec = CircuitSpec::random(n, depths[d], Architecture::Brickwall,
                                               rng::member_seed(master_seed, task));
        OptimizationTrace trace = gradient_descent(spec, *hams[h], cfg, &grounds[h]);
        EvolutionCurve curve;
        curve.L = depths[d];
        curve.hamiltonian = to_string(hams[h]->kind());
        for (const auto& rec : trace.records) {
            curve.taus.push_back(rec.tau);
            curve.renyi_2.push_back(rec.renyi_2);
        }
        curve.ground_renyi_2 = entropies(partial_trace(grounds[h].state, n / 2)).renyi_2;
        curves[task] = std::move(curve);
    });
    return curves;
}

void write_trace_csv(const std::vector<OptimizationTrace>& traces, const std::string& path) {
    CsvWriter csv(path, {"seed", "tau", "energy", "gap", "grad_norm", "renyi2", "trace_dist"});
    for (const auto& trace : traces)
        for (const auto& rec : trace.records)
            csv.row(trace.seed, rec.tau, rec.energy, rec.gap, rec.grad_norm, rec.renyi_2,
                    rec.trace_dist);
}

std::string sweep_json(const SweepResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : result.cells) {
        cells.push_back({{"L", c.L},
                         {"seeds", c.seed_count},
                         {"before_gap", c.before_gap_mean},
                         {"after_gap", c.after_gap_mean},
                         {"before_trace_dist", c.before_dist_mean},
                         {"after_trace_dist", c.after_dist_mean},
                         {"before_renyi2", c.before_renyi2_mean},
                         {"after_renyi2", c.after_renyi2_mean},
                         {"success_rate", c.success_rate}});
    }
    nlohmann::json j{{"hamiltonian", result.hamiltonian},
                     {"n", result.n},
                     {"architecture", to_string(result.architecture)},
                     {"p", result.p},
                     {"success_threshold", result.success_threshold},
                     {"cells", cells}};
    return j.dump(2);
}

}  // namespace entdiag
