#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace entdiag {

using cxd = std::complex<double>;

// Full 2^n amplitude vector. Qubit i is bit i, least significant first;
// subsystem A is the low n/2 qubits throughout.
class StateVector {
  public:
    StateVector(int n_qubits, std::vector<cxd> amplitudes);

    // |0...0>
    static StateVector zero(int n_qubits);
    // computational basis state |index>
    static StateVector basis(int n_qubits, std::size_t index);

    int n() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cxd> amps() const { return amps_; }
    std::span<cxd> amps() { return amps_; }
    const cxd& operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;
    cxd inner(const StateVector& other) const;

    // throws on |norm - 1| > tol
    void check_norm(double tol = 1e-10) const;

  private:
    int n_;
    std::vector<cxd> amps_;
};

void apply_rotation(StateVector& state, int qubit, double phi);
void apply_cz(StateVector& state, int qi, int qj);

// debug dump: 8-byte little-endian qubit count, then interleaved re/im float64
void dump_amplitudes(const StateVector& state, const std::string& path);
StateVector load_amplitudes(const std::string& path);

}  // namespace entdiag
