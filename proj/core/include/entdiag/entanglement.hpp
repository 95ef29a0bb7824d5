#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entdiag/state.hpp"

namespace entdiag {

// Hermitian PSD unit-trace matrix of the first n_A qubits, with cached
// eigenvalues (descending).
class ReducedState {
  public:
    ReducedState(int n_A, Eigen::MatrixXcd rho);

    int n_A() const { return n_A_; }
    std::size_t dim() const { return std::size_t{1} << n_A_; }
    const Eigen::MatrixXcd& rho() const { return rho_; }
    const std::vector<double>& eigenvalues() const { return eigs_; }
    double trace() const;

    static ReducedState maximally_mixed(int n_A);

  private:
    int n_A_;
    Eigen::MatrixXcd rho_;
    std::vector<double> eigs_;
};

// entropies in bits; rank cutoff for S_max at lambda > 1e-12
struct EntropyReport {
    int n_A;
    double s_ee;
    double renyi_2;
    double renyi_4;
    double renyi_6;
    double s_max;
    double s_min;
    double purity;

    // S_max >= S_EE >= R_2 >= R_4 >= R_6 >= S_min >= 0, all <= n_A
    bool ordered(double tol = 1e-9) const;
};

struct BoundsReport {
    int n_A;
    double trace_dist_to_mixed;   // (1/2)||rho_A - I/2^{n_A}||_1
    double upper;                 // sqrt((n_A - S_EE)/2)
    double lower_k2;              // (2k)^{-1}(2^{(1-k)R_k} - 2^{(1-k)n_A})
    double lower_k4;
    double lower_k6;
    double asymptotic_lower;      // 1 - S_EE/n_A

    bool sandwich_holds(double tol = 1e-12) const;
};

struct ContinuityReport {
    // each slack is RHS - LHS; the predicate is slack >= -tol
    double fannes_audenaert_slack;
    double renyi_k2_slack;
    double renyi_k4_slack;
    double renyi_k6_slack;
    double pinsker_slack;           // relative entropy in nats
    bool relative_entropy_infinite; // supp(rho) not within supp(sigma)
    std::optional<double> monotonicity_slack;  // ||rho-sigma||_1 - ||rho_A-sigma_A||_1

    bool all_hold(double tol = 1e-9) const;
};

// rho_A = Tr_B |psi><psi| over the high n-n_A qubits
ReducedState partial_trace(const StateVector& state, int n_A);

EntropyReport entropies(const ReducedState& rho);

double trace_distance(const ReducedState& rho, const ReducedState& sigma);
double trace_distance_to_mixed(const ReducedState& rho);

BoundsReport theorem_bounds(const ReducedState& rho);

// relative entropy S(rho||sigma); returns +inf (flag in report) when the
// support condition fails
double relative_entropy_nats(const ReducedState& rho, const ReducedState& sigma);

ContinuityReport continuity_checks(const ReducedState& rho, const ReducedState& sigma);
// as above, and also checks partial-trace monotonicity of the full-state pair
ContinuityReport continuity_checks(const StateVector& psi, const StateVector& phi, int n_A);

struct GeometricMeasure {
    double value;       // -log2 sup_{product alpha} |<alpha|psi>|^2
    bool converged;
    double best_overlap_sq;
};

// alternating single-qubit power iteration over `restarts` random product
// initializations; flags (returning the best value) if a restart exhausts
// 1e4 sweeps without the overlap settling below tol
GeometricMeasure geometric_measure(const StateVector& state, int restarts = 16, double tol = 1e-10);

std::string to_json(const EntropyReport& report);
std::string to_json(const BoundsReport& report);

}  // namespace entdiag
