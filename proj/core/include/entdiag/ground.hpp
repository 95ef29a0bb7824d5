#pragma once

#include <stdexcept>

#include "entdiag/hamiltonian.hpp"
#include "entdiag/state.hpp"

namespace entdiag {

struct SolverFailure : std::runtime_error {
    SolverFailure(const std::string& what, double residual_)
        : std::runtime_error(what), residual(residual_) {}
    double residual;
};

enum class GroundSolver { Dense, Iterative };

struct GroundSolution {
    double energy;
    StateVector state;
    bool degenerate;   // two lowest eigenvalues within 1e-9
    GroundSolver solver;
    double residual;   // ||H psi - E psi||_2
};

// Minimal eigenpair: dense Hermitian eigendecomposition for n <= 12,
// restarted Lanczos (full reorthogonalization, tol 1e-10, max 5000 matvecs)
// for 12 < n <= 16.
GroundSolution ground_state(const HamiltonianModel& H);

// forces the Lanczos path regardless of n (cross-checks against the dense route)
GroundSolution ground_state_iterative(const HamiltonianModel& H);

}  // namespace entdiag
