#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entdiag/circuit.hpp"
#include "entdiag/growth.hpp"
#include "entdiag/hamiltonian.hpp"
#include "entdiag/optimize.hpp"

namespace entdiag {

enum class ExperimentKind { Grow, Optimize, Sweep, Diagnose, Sff, Spread, Tables };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HamiltonianConfig {
    HamiltonianKind kind = HamiltonianKind::NNIsing;
    double g = 1.0;
    double alpha = 1.0;
    uint64_t seed = 1;

    HamiltonianModel build(int n) const;
};

// Schema-validated experiment description; unknown fields are rejected and a
// resolved copy is written next to the results.
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Grow;
    int n = 8;
    int layers = 0;
    std::vector<int> depths;
    Architecture architecture = Architecture::Brickwall;
    double p = 1.0;
    HamiltonianConfig hamiltonian;
    int seeds = 50;
    uint64_t master_seed = 1;
    OptimizerConfig optimizer;
    std::string out_dir = "results";
    int workers = 0;
    std::vector<EntropyKind> entropy_kinds;  // empty: all
    double tau_max = 30.0;
    int tau_points = 301;
    std::vector<int> times;
    std::string probe = "z";
    std::string spread_operator = "hamiltonian";  // or "pauli"
    int operator_site = 0;
    std::string operator_pauli = "z";
    std::vector<int> n_list;
    double success_threshold = 0.1;
    std::string sff_n_convention = "dim";  // reported N: "dim" (2^{n_A}) or "qubits"

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::string to_json_text() const;   // canonical (sorted keys)
    std::string config_hash() const;    // fnv1a64 of the canonical form
};

struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    std::optional<uint64_t> master_seed;
    bool force = false;
};

// 0 success, 2 validation error, 3 numerical failure
int run_experiment(const std::string& config_path, const CliOverrides& overrides);
int run_experiment(ExperimentConfig config, bool force);

struct VerifyTolerances {
    double v_k = 0.05;
    double r = 0.1;
    double L_l = 8.0;
    double L_s = 8.0;
    double energy = 1e-8;

    static VerifyTolerances from_file(const std::string& path);
};

struct VerifyDiff {
    std::string key;      // e.g. "renyi_2/n=8/v_k"
    double expected;
    double actual;        // NaN when the row is missing
    double tolerance;
    bool missing;
};

struct VerifyReport {
    bool pass = true;
    std::vector<VerifyDiff> diffs;

    std::string to_json() const;
    std::string to_text() const;
};

// compares produced table/energy records against a golden file
VerifyReport verify(const std::string& golden_path, const std::string& results_path,
                    const VerifyTolerances& tol);

}  // namespace entdiag
