#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entdiag/pauli.hpp"
#include "entdiag/state.hpp"

namespace entdiag {

enum class HamiltonianKind { NNIsing, LongRangeIsing, SYK4 };

std::string to_string(HamiltonianKind kind);
HamiltonianKind hamiltonian_kind_from_string(const std::string& name);

struct SykCoupling {
    std::array<int, 4> indices;  // Majorana indices, strictly increasing
    double value;
};

// Hermitian Pauli-term sum with an optional cached dense matrix (n <= 12).
// Immutable after construction; matrix action is reentrant.
class HamiltonianModel {
  public:
    HamiltonianModel(HamiltonianKind kind, int n, std::vector<PauliTerm> terms);

    HamiltonianKind kind() const { return kind_; }
    int n() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    double g = 0.0;
    double alpha = 0.0;
    uint64_t coupling_seed = 0;
    std::vector<SykCoupling> couplings;  // SYK only

    // out = H in
    void apply(std::span<const cxd> in, std::span<cxd> out) const;
    // out = Re(H) in, for real vectors (exact for real-amplitude circuits)
    void apply_real(std::span<const double> in, std::span<double> out) const;

    bool dense_cached() const { return dense_ != nullptr; }
    // true when the dense matvec beats the term path (dense-friendly n <= 12)
    bool prefer_dense() const;
    // cached for n <= 12; built on first use
    const Eigen::MatrixXcd& dense() const;
    const Eigen::MatrixXd& dense_real() const;

  private:
    HamiltonianKind kind_;
    int n_;
    std::vector<PauliTerm> terms_;
    mutable std::shared_ptr<Eigen::MatrixXcd> dense_;
    mutable std::shared_ptr<Eigen::MatrixXd> dense_real_;
};

// H = sum_i sigma_z,i sigma_z,i+1 + g sum_i sigma_x,i, periodic chain
HamiltonianModel build_nn_ising(int n, double g);

// H = sum_{i<j} d(i,j)^{-alpha} sigma_z,i sigma_z,j + g sum_i sigma_x,i,
// d(i,j) the periodic ring distance
HamiltonianModel build_long_range_ising(int n, double alpha, double g);

// SYK_4: -sum_{i1<i2<i3<i4 <= 2n} J gamma_i1 gamma_i2 gamma_i3 gamma_i4 with
// {gamma_i, gamma_j} = delta_ij (Jordan-Wigner strings scaled by 1/sqrt 2) and
// J ~ N(0, 3!/(2n)^3)
HamiltonianModel build_syk4(int n, uint64_t seed);

// Jordan-Wigner Majorana gamma_m, m in [0, 2n), normalized to {g_i,g_j}=delta_ij
PhasedString majorana_string(int m);

// exact ground energy of the periodic transverse-field chain:
// -sum_k sqrt(1 + g^2 - 2 g cos(2 pi (k+1/2)/n)), the momentum grid that
// reproduces finite-n exact diagonalization
double exact_nn_ising_energy(int n, double g);

// <psi|H|psi>; asserts the imaginary residue is below 1e-10 and discards it
double energy(const StateVector& state, const HamiltonianModel& H);

// instance reproducibility: JSON array of {indices:[i1,i2,i3,i4], J: float}
void dump_syk_couplings(const HamiltonianModel& H, const std::string& path);
HamiltonianModel load_syk4(int n, const std::string& path);

}  // namespace entdiag
