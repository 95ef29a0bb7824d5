#include "entdiag/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace entdiag {

int PauliTerm::y_count() const { return std::popcount(x_mask & z_mask); }

char PauliTerm::label(int qubit) const {
    const bool x = (x_mask >> qubit) & 1u;
    const bool z = (z_mask >> qubit) & 1u;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

std::string PauliTerm::labels(int n) const {
    std::string out(n, 'I');
    for (int q = 0; q < n; ++q) out[q] = label(q);
    return out;
}

int PauliTerm::weight(int n) const {
    int w = 0;
    for (int q = 0; q < n; ++q) w += label(q) != 'I';
    return w;
}

cxd pauli_phase(uint32_t x_mask, uint32_t z_mask) {
    switch (std::popcount(x_mask & z_mask) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void accumulate_term(const PauliTerm& term, std::span<const cxd> in, std::span<cxd> out) {
    const cxd factor = term.coeff * pauli_phase(term.x_mask, term.z_mask);
    const std::size_t dim = in.size();
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(static_cast<uint32_t>(b) & term.z_mask) & 1) ? -1.0 : 1.0;
        out[b ^ term.x_mask] += factor * sign * in[b];
    }
}

void accumulate_term_real(const PauliTerm& term, std::span<const double> in, std::span<double> out) {
    const int y = term.y_count();
    if (y & 1) return;
    const double factor = term.coeff * ((y % 4 == 2) ? -1.0 : 1.0);
    const std::size_t dim = in.size();
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(static_cast<uint32_t>(b) & term.z_mask) & 1) ? -1.0 : 1.0;
        out[b ^ term.x_mask] += factor * sign * in[b];
    }
}

Eigen::MatrixXcd dense_matrix(std::span<const PauliTerm> terms, int n) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& term : terms) {
        const cxd factor = term.coeff * pauli_phase(term.x_mask, term.z_mask);
        for (std::size_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(static_cast<uint32_t>(b) & term.z_mask) & 1) ? -1.0 : 1.0;
            H(b ^ term.x_mask, b) += factor * sign;
        }
    }
    return H;
}

PhasedString PhasedString::operator*(const PhasedString& rhs) const {
    // X^a Z^b * X^c Z^d = (-1)^{|b & c|} X^{a^c} Z^{b^d}
    PhasedString out;
    out.phase = phase * rhs.phase;
    if (std::popcount(z_mask & rhs.x_mask) & 1) out.phase = -out.phase;
    out.x_mask = x_mask ^ rhs.x_mask;
    out.z_mask = z_mask ^ rhs.z_mask;
    return out;
}

}  // namespace entdiag
