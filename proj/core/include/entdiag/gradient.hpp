#pragma once

#include <span>
#include <vector>

#include "entdiag/circuit.hpp"
#include "entdiag/hamiltonian.hpp"

namespace entdiag {

// Exact dE/dtheta via a reverse (adjoint) sweep: forward run, lambda = H psi,
// then per layer undo the gates on both vectors and take generator overlaps.
// For restricted circuits the per-layer gradient is the sum over the layer's
// qubits (chain rule through the tying constraint).
//
// Returned vector has spec.param_count() entries.
std::vector<double> energy_gradient(const CircuitSpec& spec, const HamiltonianModel& H);

// Preallocated engine for optimizer loops. Runs on real amplitudes: R_y and
// CZ are real, so circuit states stay real and only Re(H) couples back
// through the sweep.
class AdjointEngine {
  public:
    AdjointEngine(const CircuitSpec& spec, const HamiltonianModel& H);

    // evaluates at the engine's current spec parameters
    double energy() ;
    // gradient at the current parameters; returns the energy
    double energy_and_gradient(std::span<double> grad_out);

    CircuitSpec& spec() { return spec_; }
    const CircuitSpec& spec() const { return spec_; }

    // real amplitudes of the most recent forward run
    std::span<const double> last_state() const { return psi_; }
    StateVector last_state_complex() const;

  private:
    void forward();

    CircuitSpec spec_;
    const HamiltonianModel& H_;
    std::vector<double> psi_, lambda_, sweep_psi_, sweep_lambda_;
};

}  // namespace entdiag
