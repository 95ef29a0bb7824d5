#include "entdiag/chaos.hpp"

#include <cmath>
#include <stdexcept>

#include "entdiag/io.hpp"
#include "entdiag/kernels.hpp"

namespace entdiag {

bool SpectralFormFactor::within_bounds(double tol) const {
    const double floor = 1.0 / (static_cast<double>(N) * N);
    for (double v : values)
        if (v > 1.0 + tol || v < floor - tol) return false;
    return true;
}

SpectralFormFactor sff_from_eigenvalues(const std::vector<double>& eigs,
                                        const std::vector<double>& taus) {
    SpectralFormFactor out;
    out.taus = taus;
    out.N = eigs.size();
    out.values.reserve(taus.size());
    const double z0_sq = static_cast<double>(eigs.size()) * eigs.size();
    for (double tau : taus) {
        cxd z{0.0, 0.0};
        for (double lam : eigs) z += std::exp(cxd{0.0, -tau * lam});
        out.values.push_back(std::norm(z) / z0_sq);
    }
    return out;
}

SpectralFormFactor sff(const ReducedState& rho, const std::vector<double>& taus) {
    return sff_from_eigenvalues(rho.eigenvalues(), taus);
}

double sff_pure_normalized(double tau, std::size_t N) {
    const double Nd = static_cast<double>(N);
    return (Nd * Nd - 2.0 * Nd + 2.0 + 2.0 * (Nd - 1.0) * std::cos(tau)) / (Nd * Nd);
}

double sff_thermal_unnormalized(const std::vector<double>& eigs, double tau) {
    const std::size_t N = eigs.size();
    double acc = static_cast<double>(N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            if (i != j) acc += std::cos((eigs[i] - eigs[j]) * tau);
    return acc;
}

double PauliCoefficients::norm_sq() const {
    double acc = 0.0;
    for (const auto& c : h) acc += std::norm(c);
    return acc;
}

int PauliCoefficients::weight(std::size_t alpha, int n) {
    int w = 0;
    for (int q = 0; q < n; ++q) w += ((alpha >> (2 * q)) & 3) != 0;
    return w;
}

namespace {

// Per-qubit contraction of the (row, col) bit pair into a Pauli index.
// Working array T of 4^n entries; qubit q occupies bit q of the row half and
// bit q of the column half. Output slot encoding within the pair:
// (r,c) = (0,0)->I, (1,0)->X, (0,1)->Y, (1,1)->Z.
PauliCoefficients transform(const Eigen::MatrixXcd& O, int n) {
    const std::size_t dim = std::size_t{1} << n;
    if (O.rows() != static_cast<Eigen::Index>(dim) || O.cols() != static_cast<Eigen::Index>(dim))
        throw std::invalid_argument("operator dimension does not match qubit count");
    std::vector<cxd> T(dim * dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t r = 0; r < dim; ++r) T[r + dim * c] = O(r, c);

    const cxd I{0.0, 1.0};
    for (int q = 0; q < n; ++q) {
        const std::size_t rb = std::size_t{1} << q;        // row bit
        const std::size_t cb = dim * rb;                   // column bit in flat index
        for (std::size_t base = 0; base < dim * dim; ++base) {
            if ((base & rb) || (base & cb)) continue;
            const cxd t00 = T[base];
            const cxd t01 = T[base + cb];        // r=0, c=1
            const cxd t10 = T[base + rb];        // r=1, c=0
            const cxd t11 = T[base + rb + cb];
            T[base] = t00 + t11;                 // I
            T[base + rb] = t01 + t10;            // X
            T[base + cb] = I * (t01 - t10);      // Y
            T[base + rb + cb] = t00 - t11;       // Z
        }
    }

    PauliCoefficients out;
    out.n = n;
    out.h.resize(dim * dim);
    const double scale = std::pow(2.0, -0.5 * n);
    // repack (row bits, col bits) into base-4 digits: digit q = r_q + 2 c_q
    for (std::size_t flat = 0; flat < dim * dim; ++flat) {
        const std::size_t r = flat % dim;
        const std::size_t c = flat / dim;
        std::size_t alpha = 0;
        for (int q = 0; q < n; ++q)
            alpha |= (((r >> q) & 1) | (((c >> q) & 1) << 1)) << (2 * q);
        out.h[alpha] = T[flat] * scale;
    }
    return out;
}

}  // namespace

PauliCoefficients pauli_coefficients(const Eigen::MatrixXcd& O, int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("pauli coefficient budget: n <= 8");
    if ((O - O.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("operator must be hermitian");
    return transform(O, n);
}

Eigen::MatrixXcd pauli_string_matrix(std::size_t alpha, int n) {
    const std::size_t dim = std::size_t{1} << n;
    uint32_t x = 0, z = 0;
    int y = 0;
    for (int q = 0; q < n; ++q) {
        switch ((alpha >> (2 * q)) & 3) {
            case 1: x |= 1u << q; break;
            case 2: x |= 1u << q; z |= 1u << q; ++y; break;
            case 3: z |= 1u << q; break;
            default: break;
        }
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    cxd phase{1.0, 0.0};
    switch (y % 4) {
        case 1: phase = cxd{0.0, 1.0}; break;
        case 2: phase = cxd{-1.0, 0.0}; break;
        case 3: phase = cxd{0.0, -1.0}; break;
        default: break;
    }
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(static_cast<uint32_t>(b) & z) & 1) ? -1.0 : 1.0;
        M(b ^ x, b) = phase * sign;
    }
    return M;
}

Eigen::MatrixXcd reconstruct_operator(const PauliCoefficients& coeffs) {
    const std::size_t dim = std::size_t{1} << coeffs.n;
    Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(dim, dim);
    const double scale = std::pow(2.0, -0.5 * coeffs.n);
    for (std::size_t alpha = 0; alpha < coeffs.h.size(); ++alpha) {
        if (std::abs(coeffs.h[alpha]) == 0.0) continue;
        O += scale * coeffs.h[alpha] * pauli_string_matrix(alpha, coeffs.n);
    }
    return O;
}

namespace {

Eigen::Matrix2cd probe_matrix(ProbePauli p) {
    Eigen::Matrix2cd m;
    switch (p) {
        case ProbePauli::X: m << 0, 1, 1, 0; break;
        case ProbePauli::Y: m << 0, cxd{0.0, -1.0}, cxd{0.0, 1.0}, 0; break;
        case ProbePauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

// conjugate a dense operator by one layer: O -> U^dag O U with U = CZ * R,
// i.e. R(-phi) [CZ O CZ] R(phi), split as per-qubit column/row passes
void conjugate_layer(Eigen::MatrixXcd& O, const CircuitSpec& spec, int layer) {
    const int n = spec.n();
    const auto dim = O.rows();
    const auto pairs = spec.layer_pairs(layer);
    for (std::size_t g = 0; g < pairs.size(); ++g) {
        if (!spec.cz_applied(layer, static_cast<int>(g))) continue;
        const std::size_t both =
            (std::size_t{1} << pairs[g].first) | (std::size_t{1} << pairs[g].second);
        for (Eigen::Index c = 0; c < dim; ++c) {
            const bool cs = (static_cast<std::size_t>(c) & both) == both;
            for (Eigen::Index r = 0; r < dim; ++r) {
                const bool rs = (static_cast<std::size_t>(r) & both) == both;
                if (cs != rs) O(r, c) = -O(r, c);
            }
        }
    }
    // left factor R(-phi) on columns
    for (int q = 0; q < n; ++q) {
        const double phi = spec.angle(layer, q);
        for (Eigen::Index c = 0; c < dim; ++c) {
            std::span<cxd> col(O.col(c).data(), static_cast<std::size_t>(dim));
            kernels::apply_rotation(col, n, q, -phi);
        }
    }
    // right factor R(phi) on rows: on the transpose it is again R(-phi) on columns
    O.transposeInPlace();
    for (int q = 0; q < n; ++q) {
        const double phi = spec.angle(layer, q);
        for (Eigen::Index c = 0; c < dim; ++c) {
            std::span<cxd> col(O.col(c).data(), static_cast<std::size_t>(dim));
            kernels::apply_rotation(col, n, q, -phi);
        }
    }
    O.transposeInPlace();
}

}  // namespace

SpreadProfile spread_profile(const SpreadOperator& op, const CircuitSpec& spec,
                             const std::vector<int>& times, ProbePauli probe) {
    const int n = spec.n();
    if (n > 10) throw std::invalid_argument("dense operator evolution budget: n <= 10");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1]) throw std::invalid_argument("times must be strictly increasing");
    if (!times.empty() && (times.front() < 0 || times.back() > spec.layers()))
        throw std::invalid_argument("times must lie within the circuit depth");

    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd O;
    if (op.hamiltonian) {
        if (op.hamiltonian->n() != n) throw std::invalid_argument("operator qubit count mismatch");
        O = dense_matrix(op.hamiltonian->terms(), n);
    } else {
        if (op.site < 0 || op.site >= n) throw std::out_of_range("operator site out of range");
        std::size_t alpha = 0;
        alpha |= static_cast<std::size_t>(op.pauli == ProbePauli::X   ? 1
                                          : op.pauli == ProbePauli::Y ? 2
                                                                      : 3)
                 << (2 * op.site);
        O = pauli_string_matrix(alpha, n);
    }

    const Eigen::Matrix2cd sp = probe_matrix(probe);
    SpreadProfile profile;
    int layer_cursor = 0;
    for (int t : times) {
        for (; layer_cursor < t; ++layer_cursor) conjugate_layer(O, spec, layer_cursor);
        profile.times.push_back(t);

        // C(x,t) via the commutator with the single-site probe, accumulated
        // without materializing [O, sigma]
        std::vector<double> c_row(n, 0.0);
        for (int x = 0; x < n; ++x) {
            const std::size_t bit = std::size_t{1} << x;
            double acc = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const int cbit = (c & bit) ? 1 : 0;
                for (std::size_t r = 0; r < dim; ++r) {
                    // (O sigma)(r,c) = sum_k O(r,k) sigma(k,c)
                    cxd osig{0.0, 0.0};
                    for (int kb = 0; kb < 2; ++kb) {
                        const cxd s = sp(kb, cbit);
                        if (s == cxd{0.0, 0.0}) continue;
                        osig += O(r, kb ? (c | bit) : (c & ~bit)) * s;
                    }
                    cxd sigo{0.0, 0.0};
                    const int rbit = (r & bit) ? 1 : 0;
                    for (int kb = 0; kb < 2; ++kb) {
                        const cxd s = sp(rbit, kb);
                        if (s == cxd{0.0, 0.0}) continue;
                        sigo += s * O(kb ? (r | bit) : (r & ~bit), c);
                    }
                    acc += std::norm(osig - sigo);
                }
            }
            c_row[x] = 0.5 * acc / static_cast<double>(dim);
        }
        profile.C.push_back(std::move(c_row));

        // Pauli-coefficient weight histogram and entropy (internal transform)
        PauliCoefficients coeffs = transform(O, n);
        const double total = coeffs.norm_sq();
        profile.norm_sq.push_back(total);
        std::vector<double> hist(n + 1, 0.0);
        double entropy = 0.0;
        for (std::size_t alpha = 0; alpha < coeffs.h.size(); ++alpha) {
            const double w = std::norm(coeffs.h[alpha]);
            if (w == 0.0) continue;
            hist[PauliCoefficients::weight(alpha, n)] += w;
            const double pnorm = w / total;
            if (pnorm > 0.0) entropy -= pnorm * std::log2(pnorm);
        }
        profile.weight_hist.push_back(std::move(hist));
        profile.coefficient_entropy.push_back(entropy);
    }
    return profile;
}

std::vector<bool> causal_cone(const CircuitSpec& spec, int x0, int t) {
    if (x0 < 0 || x0 >= spec.n()) throw std::out_of_range("site out of range");
    std::vector<bool> reach(spec.n(), false);
    reach[x0] = true;
    for (int l = 0; l < t; ++l) {
        std::vector<bool> next = reach;
        const auto pairs = spec.layer_pairs(l);
        for (std::size_t g = 0; g < pairs.size(); ++g) {
            if (!spec.cz_applied(l, static_cast<int>(g))) continue;  // rotations alone do not spread
            const auto [i, j] = pairs[g];
            if (reach[i] || reach[j]) {
                next[i] = true;
                next[j] = true;
            }
        }
        reach = std::move(next);
    }
    return reach;
}

WalkModel walk_model(double p, double t) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("shrink probability outside [0,1]");
    if (t < 0.0) throw std::invalid_argument("negative time");
    WalkModel w{};
    w.p = p;
    w.t = t;
    w.butterfly_velocity = 1.0 - 2.0 * p;
    w.mean = w.butterfly_velocity * t;
    const double var = 2.0 * p * (1.0 - p) * t;
    w.sigma = std::sqrt(var);
    // the two printed forms of the variance agree via 1 - v_B^2 = 4 p (1-p)
    const double alt = (1.0 - w.butterfly_velocity * w.butterfly_velocity) * t / 2.0;
    if (std::abs(var - alt) > 1e-12 * (1.0 + std::abs(var)))
        throw std::logic_error("walk model variance identity violated");
    return w;
}

void write_sff_csv(const SpectralFormFactor& s, const std::string& path) {
    CsvWriter csv(path, {"tau", "value"});
    for (std::size_t i = 0; i < s.taus.size(); ++i) csv.row(s.taus[i], s.values[i]);
}

void write_spread_csv(const SpreadProfile& profile, const std::string& path) {
    CsvWriter csv(path, {"t", "x", "C"});
    for (std::size_t ti = 0; ti < profile.times.size(); ++ti)
        for (std::size_t x = 0; x < profile.C[ti].size(); ++x)
            csv.row(profile.times[ti], static_cast<int>(x), profile.C[ti][x]);
}

void write_coefficient_entropy_csv(const SpreadProfile& profile, const std::string& path) {
    CsvWriter csv(path, {"t", "S"});
    for (std::size_t ti = 0; ti < profile.times.size(); ++ti)
        csv.row(profile.times[ti], profile.coefficient_entropy[ti]);
}

}  // namespace entdiag
