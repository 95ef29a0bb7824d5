#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entdiag/circuit.hpp"
#include "entdiag/entanglement.hpp"
#include "entdiag/hamiltonian.hpp"

namespace entdiag {

// |Z(tau)|^2 / Z(0)^2 with Z(tau) = sum_j exp(-i tau lambda_j) over the
// eigenvalues of rho_A; N = 2^{n_A}
struct SpectralFormFactor {
    std::vector<double> taus;
    std::vector<double> values;
    std::size_t N;

    // spec invariants: values <= 1 + 1e-9 and >= 1/N^2 - 1e-9
    bool within_bounds(double tol = 1e-9) const;
};

SpectralFormFactor sff(const ReducedState& rho, const std::vector<double>& taus);
SpectralFormFactor sff_from_eigenvalues(const std::vector<double>& eigs, const std::vector<double>& taus);

// closed forms (normalized by Z(0)^2 = N^2)
double sff_pure_normalized(double tau, std::size_t N);
// |Z|^2 identity for a diagonal spectrum: N + sum_{i != j} cos((l_i - l_j) tau)
double sff_thermal_unnormalized(const std::vector<double>& eigs, double tau);

// Pauli-string coefficients h_alpha = 2^{-n/2} Tr(sigma_alpha O), indexed
// base-4 (digit q = qubit q; 0:I 1:X 2:Y 3:Z)
struct PauliCoefficients {
    int n;
    std::vector<cxd> h;  // 4^n entries

    double norm_sq() const;  // sum |h|^2 = Tr(O^dag O)
    static int weight(std::size_t alpha, int n);
    static int pauli_at(std::size_t alpha, int qubit) { return (alpha >> (2 * qubit)) & 3; }
};

// fast per-qubit contraction, O(4^n n); public budget n <= 8
PauliCoefficients pauli_coefficients(const Eigen::MatrixXcd& O, int n);

// O = 2^{-n/2} sum_alpha h_alpha sigma_alpha
Eigen::MatrixXcd reconstruct_operator(const PauliCoefficients& coeffs);

Eigen::MatrixXcd pauli_string_matrix(std::size_t alpha, int n);

enum class ProbePauli { X, Y, Z };

struct SpreadProfile {
    std::vector<int> times;                     // layer counts
    std::vector<std::vector<double>> C;         // [time][site]
    std::vector<std::vector<double>> weight_hist;  // [time][pauli weight 0..n]
    std::vector<double> coefficient_entropy;    // [time], bits
    std::vector<double> norm_sq;                // [time], conserved
};

// what evolves: the Hamiltonian or a single-site Pauli at site x0
struct SpreadOperator {
    const HamiltonianModel* hamiltonian = nullptr;  // used when non-null
    ProbePauli pauli = ProbePauli::Z;
    int site = 0;
};

// O(t) = U(t)^dag O(0) U(t) through t layers of the circuit;
// C(x,t) = (1/2) 2^{-n} Tr([O(t), sigma_a^{(x)}]^dag [O(t), sigma_a^{(x)}])
SpreadProfile spread_profile(const SpreadOperator& op, const CircuitSpec& spec,
                             const std::vector<int>& times, ProbePauli probe = ProbePauli::Z);

// sites reachable from x0 after t layers of the spec's pairing (exact cone)
std::vector<bool> causal_cone(const CircuitSpec& spec, int x0, int t);

// biased-random-walk spreading model: mu = (1-2p) t, sigma^2 = 2 p (1-p) t
struct WalkModel {
    double p;
    double t;
    double butterfly_velocity;  // 1 - 2p
    double mean;
    double sigma;
};

WalkModel walk_model(double p, double t);

void write_sff_csv(const SpectralFormFactor& sff, const std::string& path);
void write_spread_csv(const SpreadProfile& profile, const std::string& path);
void write_coefficient_entropy_csv(const SpreadProfile& profile, const std::string& path);

}  // namespace entdiag
