#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entdiag/circuit.hpp"
#include "entdiag/ground.hpp"
#include "entdiag/hamiltonian.hpp"

namespace entdiag {

struct OptimizerConfig {
    double eta = 0.005;
    int max_steps = 10000;
    int record_every = 10;
    double stop_grad_norm = 0.0;  // 0: run to max_steps
};

struct TraceRecord {
    int tau;
    double energy;
    double gap;          // E - E_g (NaN when no ground diagnostics)
    double grad_norm;
    double renyi_2;
    double trace_dist;   // distance of reductions to the ground reduction (NaN when absent)
};

struct OptimizationTrace {
    uint64_t seed = 0;
    std::vector<TraceRecord> records;
    std::vector<double> final_params;
    double final_energy = 0.0;
    int energy_increase_steps = 0;  // count of steps with E rising beyond 1e-9
    int steps_taken = 0;
    bool ground_diagnostics = true;
};

// NaN in the gradient aborts the descent; carries the step and parameters for
// the diagnostic dump.
struct DescentFailure : std::runtime_error {
    DescentFailure(const std::string& what, int step_, std::vector<double> params_)
        : std::runtime_error(what), step(step_), params(std::move(params_)) {}
    int step;
    std::vector<double> params;
};

// theta_{tau+1} = theta_tau - eta grad E(theta_tau); deterministic given
// (spec, cfg). Ground diagnostics come from `ground` when provided.
OptimizationTrace gradient_descent(const CircuitSpec& spec, const HamiltonianModel& H,
                                   const OptimizerConfig& cfg,
                                   const GroundSolution* ground = nullptr);

struct SweepCell {
    int L;
    int seed_count;
    double before_gap_mean, after_gap_mean;
    double before_dist_mean, after_dist_mean;
    double before_renyi2_mean, after_renyi2_mean;
    double success_rate;  // fraction of seeds with final gap < threshold
};

struct SweepResult {
    std::string hamiltonian;
    int n;
    Architecture architecture;
    double p;
    double success_threshold;
    std::vector<SweepCell> cells;
};

// ensemble before/after statistics per depth; tasks are (depth x seed) cells
// merged by index
SweepResult success_sweep(int n, const HamiltonianModel& H, const std::vector<int>& depths,
                          int seeds_per_depth, const OptimizerConfig& cfg,
                          Architecture arch = Architecture::Brickwall, double p = 1.0,
                          double success_threshold = 0.1, uint64_t master_seed = 1,
                          int workers = 0);

struct EvolutionCurve {
    int L;
    std::string hamiltonian;
    std::vector<int> taus;
    std::vector<double> renyi_2;
    double ground_renyi_2;
};

// Renyi-2 evolution over the optimization for each (depth, hamiltonian)
std::vector<EvolutionCurve> entanglement_evolution(int n, const std::vector<int>& depths,
                                                   const std::vector<const HamiltonianModel*>& hams,
                                                   const OptimizerConfig& cfg,
                                                   uint64_t master_seed = 1, int workers = 0);

// CSV columns: seed,tau,energy,gap,grad_norm,renyi2,trace_dist
void write_trace_csv(const std::vector<OptimizationTrace>& traces, const std::string& path);
std::string sweep_json(const SweepResult& result);

}  // namespace entdiag
