#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace entdiag::kernels {

// Gate kernels templated on the amplitude scalar. The gate set (R_y, CZ) is
// real, so the same kernels drive the complex statevector and the real-valued
// adjoint engine.

// R(phi) = [[cos phi, sin phi], [-sin phi, cos phi]] on the target qubit
// (qubit q is bit q, least significant first).
template <typename Scalar>
void apply_rotation(std::span<Scalar> amps, int n, int qubit, double phi) {
    if (qubit < 0 || qubit >= n) throw std::out_of_range("rotation qubit out of range");
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const std::size_t dim = amps.size();
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
        for (std::size_t lo = 0; lo < bit; ++lo) {
            const std::size_t i0 = hi + lo;
            const std::size_t i1 = i0 + bit;
            const Scalar a0 = amps[i0];
            const Scalar a1 = amps[i1];
            amps[i0] = c * a0 + s * a1;
            amps[i1] = -s * a0 + c * a1;
        }
    }
}

// CZ = diag(1,1,1,-1): negate amplitudes with both target bits set.
template <typename Scalar>
void apply_cz(std::span<Scalar> amps, int n, int qi, int qj) {
    if (qi == qj) throw std::invalid_argument("cz requires two distinct qubits");
    if (qi < 0 || qj < 0 || qi >= n || qj >= n) throw std::out_of_range("cz qubit out of range");
    if (qi > qj) std::swap(qi, qj);
    const std::size_t dim = amps.size();
    const std::size_t bi = std::size_t{1} << qi;
    const std::size_t bj = std::size_t{1} << qj;
    for (std::size_t hi = 0; hi < dim; hi += 2 * bj) {
        for (std::size_t mid = 0; mid < bj; mid += 2 * bi) {
            for (std::size_t lo = 0; lo < bi; ++lo) {
                const std::size_t idx = hi + mid + lo + bi + bj;
                amps[idx] = -amps[idx];
            }
        }
    }
}

// d/dphi R(phi) applied after undoing R(phi) collapses to the constant
// generator i*sigma_y = [[0,1],[-1,0]]; the adjoint sweep only ever needs
// Re<lhs| i*sigma_y_q |rhs>.
template <typename Scalar>
double generator_overlap(std::span<const Scalar> lhs, std::span<const Scalar> rhs, int qubit) {
    const std::size_t dim = lhs.size();
    const std::size_t bit = std::size_t{1} << qubit;
    double acc = 0.0;
    for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
        for (std::size_t lo = 0; lo < bit; ++lo) {
            const std::size_t i0 = hi + lo;
            const std::size_t i1 = i0 + bit;
            if constexpr (std::is_same_v<Scalar, double>) {
                acc += lhs[i0] * rhs[i1] - lhs[i1] * rhs[i0];
            } else {
                acc += (std::conj(lhs[i0]) * rhs[i1] - std::conj(lhs[i1]) * rhs[i0]).real();
            }
        }
    }
    return acc;
}

}  // namespace entdiag::kernels
