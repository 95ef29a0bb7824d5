#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace entdiag {

using cxd = std::complex<double>;

// One Hermitian Pauli-string term: coeff * i^{y} X^{x_mask} Z^{z_mask},
// where y = popcount(x&z) counts the Y sites. Pure Pauli strings are
// Hermitian, so coeff is real.
struct PauliTerm {
    double coeff = 0.0;
    uint32_t x_mask = 0;
    uint32_t z_mask = 0;

    int y_count() const;
    // label of qubit q: 'I', 'X', 'Y' or 'Z'
    char label(int qubit) const;
    std::string labels(int n) const;
    int weight(int n) const;  // number of non-identity sites
};

// phase i^y attached to the X^x Z^z factorization
cxd pauli_phase(uint32_t x_mask, uint32_t z_mask);

// out += term acting on in (complex amplitudes)
void accumulate_term(const PauliTerm& term, std::span<const cxd> in, std::span<cxd> out);

// out += Re(term) acting on a real vector; terms with odd Y count act purely
// imaginarily on real vectors and are skipped
void accumulate_term_real(const PauliTerm& term, std::span<const double> in, std::span<double> out);

Eigen::MatrixXcd dense_matrix(std::span<const PauliTerm> terms, int n);

// product of X^x Z^z strings with phase bookkeeping; used for Majorana algebra
struct PhasedString {
    cxd phase{1.0, 0.0};
    uint32_t x_mask = 0;
    uint32_t z_mask = 0;

    PhasedString operator*(const PhasedString& rhs) const;
};

}  // namespace entdiag
