#include "entdiag/gradient.hpp"

#include <stdexcept>

#include "entdiag/kernels.hpp"

namespace entdiag {

namespace {

// Reverse sweep shared by the complex reference path and the real engine.
// Precondition: psi = U|0>, lambda = H psi (or Re(H) psi for real scalars).
template <typename Scalar>
void adjoint_sweep(const CircuitSpec& spec, std::span<Scalar> psi, std::span<Scalar> lambda,
                   std::span<double> grad) {
    const int n = spec.n();
    const bool restricted = spec.architecture() == Architecture::Restricted;
    for (int l = spec.layers() - 1; l >= 0; --l) {
        const auto pairs = spec.layer_pairs(l);
        for (std::size_t g = 0; g < pairs.size(); ++g) {
            if (!spec.cz_applied(l, static_cast<int>(g))) continue;
            kernels::apply_cz(psi, n, pairs[g].first, pairs[g].second);
            kernels::apply_cz(lambda, n, pairs[g].first, pairs[g].second);
        }
        // psi now ends with the layer's rotations; the derivative of each
        // rotation is the fixed generator acting on it
        for (int q = 0; q < n; ++q) {
            const double component =
                2.0 * kernels::generator_overlap<Scalar>(lambda, psi, q);
            if (restricted)
                grad[l] += component;
            else
                grad[static_cast<std::size_t>(l) * n + q] = component;
        }
        for (int q = 0; q < n; ++q) {
            const double phi = spec.angle(l, q);
            kernels::apply_rotation(psi, n, q, -phi);
            kernels::apply_rotation(lambda, n, q, -phi);
        }
    }
}

}  // namespace

std::vector<double> energy_gradient(const CircuitSpec& spec, const HamiltonianModel& H) {
    if (spec.n() != H.n()) throw std::invalid_argument("spec/hamiltonian qubit count mismatch");
    StateVector psi = run_circuit(spec);
    std::vector<cxd> lambda(psi.dim());
    H.apply(psi.amps(), lambda);
    std::vector<double> grad(spec.param_count(), 0.0);
    adjoint_sweep<cxd>(spec, psi.amps(), lambda, grad);
    return grad;
}

AdjointEngine::AdjointEngine(const CircuitSpec& spec, const HamiltonianModel& H)
    : spec_(spec), H_(H), psi_(std::size_t{1} << spec.n()), lambda_(psi_.size()),
      sweep_psi_(psi_.size()), sweep_lambda_(psi_.size()) {
    if (spec.n() != H.n()) throw std::invalid_argument("spec/hamiltonian qubit count mismatch");
}

void AdjointEngine::forward() {
    std::fill(psi_.begin(), psi_.end(), 0.0);
    psi_[0] = 1.0;
    std::span<double> amps(psi_);
    const int n = spec_.n();
    for (int l = 0; l < spec_.layers(); ++l) {
        for (int q = 0; q < n; ++q) kernels::apply_rotation(amps, n, q, spec_.angle(l, q));
        const auto pairs = spec_.layer_pairs(l);
        for (std::size_t g = 0; g < pairs.size(); ++g)
            if (spec_.cz_applied(l, static_cast<int>(g)))
                kernels::apply_cz(amps, n, pairs[g].first, pairs[g].second);
    }
}

double AdjointEngine::energy() {
    forward();
    H_.apply_real(psi_, lambda_);
    double e = 0.0;
    for (std::size_t i = 0; i < psi_.size(); ++i) e += psi_[i] * lambda_[i];
    return e;
}

double AdjointEngine::energy_and_gradient(std::span<double> grad_out) {
    if (grad_out.size() != static_cast<std::size_t>(spec_.param_count()))
        throw std::invalid_argument("gradient buffer size mismatch");
    const double e = energy();
    std::fill(grad_out.begin(), grad_out.end(), 0.0);
    // sweep on copies so last_state() keeps the forward state
    sweep_psi_ = psi_;
    sweep_lambda_ = lambda_;
    adjoint_sweep<double>(spec_, sweep_psi_, sweep_lambda_, grad_out);
    return e;
}

StateVector AdjointEngine::last_state_complex() const {
    std::vector<cxd> amps(psi_.size());
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = cxd{psi_[i], 0.0};
    return StateVector(spec_.n(), std::move(amps));
}

}  // namespace entdiag
