#include "entdiag/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "entdiag/rng.hpp"

namespace entdiag {

namespace {

constexpr double kEigCutoff = 1e-12;

double log2_safe(double x) { return std::log2(x); }

std::vector<double> descending_eigenvalues(const Eigen::MatrixXcd& herm) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    std::vector<double> eigs(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eigs.begin(), eigs.end(), std::greater<>());
    return eigs;
}

}  // namespace

ReducedState::ReducedState(int n_A, Eigen::MatrixXcd rho) : n_A_(n_A), rho_(std::move(rho)) {
    if (n_A < 1 || n_A > 16) throw std::invalid_argument("subsystem size out of range");
    const auto d = static_cast<Eigen::Index>(dim());
    if (rho_.rows() != d || rho_.cols() != d)
        throw std::invalid_argument("reduced matrix dimension mismatch");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("reduced matrix is not hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-10 || std::abs(rho_.trace().imag()) > 1e-10)
        throw std::invalid_argument("reduced matrix is not unit trace");
    eigs_ = descending_eigenvalues(rho_);
    if (eigs_.back() < -kEigCutoff)
        throw std::invalid_argument("reduced matrix has a negative eigenvalue beyond tolerance");
}

double ReducedState::trace() const { return rho_.trace().real(); }

ReducedState ReducedState::maximally_mixed(int n_A) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_A);
    return ReducedState(n_A, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

ReducedState partial_trace(const StateVector& state, int n_A) {
    if (n_A < 1 || n_A >= state.n()) throw std::out_of_range("subsystem size out of range");
    const auto dA = static_cast<Eigen::Index>(std::size_t{1} << n_A);
    const auto dB = static_cast<Eigen::Index>(state.dim() >> n_A);
    // amplitude index b = bA + 2^{n_A} bB: column-major map has A as rows
    Eigen::Map<const Eigen::MatrixXcd> M(state.amps().data(), dA, dB);
    Eigen::MatrixXcd rho = M * M.adjoint();
    return ReducedState(n_A, std::move(rho));
}

EntropyReport entropies(const ReducedState& rho) {
    const auto& eigs = rho.eigenvalues();
    double see = 0.0, p2 = 0.0, p4 = 0.0, p6 = 0.0, purity = 0.0;
    int rank = 0;
    double lmax = 0.0;
    for (double lam : eigs) {
        lmax = std::max(lmax, lam);
        if (lam > kEigCutoff) {
            ++rank;
            see -= lam * log2_safe(lam);
            const double l2 = lam * lam;
            p2 += l2;
            p4 += l2 * l2;
            p6 += l2 * l2 * l2;
            purity += l2;
        }
    }
    EntropyReport report{};
    report.n_A = rho.n_A();
    report.s_ee = see;
    report.renyi_2 = -log2_safe(p2);
    report.renyi_4 = log2_safe(p4) / (1.0 - 4.0);
    report.renyi_6 = log2_safe(p6) / (1.0 - 6.0);
    report.s_max = log2_safe(static_cast<double>(std::max(rank, 1)));
    report.s_min = -log2_safe(lmax);
    report.purity = purity;
    return report;
}

bool EntropyReport::ordered(double tol) const {
    const double max_allowed = n_A + tol;
    const double chain[] = {s_max, s_ee, renyi_2, renyi_4, renyi_6, s_min};
    for (int i = 0; i + 1 < 6; ++i)
        if (chain[i] + tol < chain[i + 1]) return false;
    for (double v : chain)
        if (v < -tol || v > max_allowed) return false;
    return true;
}

double trace_distance(const ReducedState& rho, const ReducedState& sigma) {
    if (rho.n_A() != sigma.n_A()) throw std::invalid_argument("subsystem dimension mismatch");
    const auto eigs = descending_eigenvalues(rho.rho() - sigma.rho());
    double sum = 0.0;
    for (double e : eigs) sum += std::abs(e);
    return 0.5 * sum;
}

double trace_distance_to_mixed(const ReducedState& rho) {
    const double inv = 1.0 / static_cast<double>(rho.dim());
    double sum = 0.0;
    for (double lam : rho.eigenvalues()) sum += std::abs(lam - inv);
    return 0.5 * sum;
}

BoundsReport theorem_bounds(const ReducedState& rho) {
    const EntropyReport ent = entropies(rho);
    const double nA = rho.n_A();
    auto lower = [&](double k, double renyi_k) {
        return (std::exp2((1.0 - k) * renyi_k) - std::exp2((1.0 - k) * nA)) / (2.0 * k);
    };
    BoundsReport report{};
    report.n_A = rho.n_A();
    report.trace_dist_to_mixed = trace_distance_to_mixed(rho);
    report.upper = std::sqrt(std::max(0.0, nA - ent.s_ee) / 2.0);
    report.lower_k2 = lower(2.0, ent.renyi_2);
    report.lower_k4 = lower(4.0, ent.renyi_4);
    report.lower_k6 = lower(6.0, ent.renyi_6);
    report.asymptotic_lower = 1.0 - ent.s_ee / nA;
    return report;
}

bool BoundsReport::sandwich_holds(double tol) const {
    const double d = trace_dist_to_mixed;
    return lower_k2 <= d + tol && lower_k4 <= d + tol && lower_k6 <= d + tol && d <= upper + tol;
}

double relative_entropy_nats(const ReducedState& rho, const ReducedState& sigma) {
    if (rho.n_A() != sigma.n_A()) throw std::invalid_argument("subsystem dimension mismatch");
    // S(rho||sigma) = Tr rho ln rho - Tr rho ln sigma, in the eigenbasis of sigma
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sig(sigma.rho());
    double tr_rho_ln_sigma = 0.0;
    for (Eigen::Index j = 0; j < sig.eigenvalues().size(); ++j) {
        const double mu = sig.eigenvalues()(j);
        const double occupation = (sig.eigenvectors().col(j).adjoint() * rho.rho() *
                                   sig.eigenvectors().col(j))(0).real();
        if (mu <= kEigCutoff) {
            if (occupation > 1e-10) return std::numeric_limits<double>::infinity();
            continue;
        }
        tr_rho_ln_sigma += occupation * std::log(mu);
    }
    double tr_rho_ln_rho = 0.0;
    for (double lam : rho.eigenvalues())
        if (lam > kEigCutoff) tr_rho_ln_rho += lam * std::log(lam);
    return tr_rho_ln_rho - tr_rho_ln_sigma;
}

namespace {

double binary_entropy_bits(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return -t * std::log2(t) - (1.0 - t) * std::log2(1.0 - t);
}

ContinuityReport continuity_impl(const ReducedState& rho, const ReducedState& sigma) {
    const EntropyReport er = entropies(rho);
    const EntropyReport es = entropies(sigma);
    const double full_dist = 2.0 * trace_distance(rho, sigma);  // ||rho - sigma||_1
    const double half_dist = 0.5 * full_dist;
    const double nA = rho.n_A();

    ContinuityReport report{};
    // Fannes-Audenaert: |S(rho)-S(sigma)| <= T log2(2^nA - 1) + H(T), T = half distance
    const double fa_rhs =
        half_dist * std::log2(std::exp2(nA) - 1.0) + binary_entropy_bits(half_dist);
    report.fannes_audenaert_slack = fa_rhs - std::abs(er.s_ee - es.s_ee);

    auto renyi_slack = [&](double k, double rk_rho, double rk_sigma) {
        return k * std::exp2(nA * (k - 1.0)) * full_dist - std::abs(rk_rho - rk_sigma);
    };
    report.renyi_k2_slack = renyi_slack(2.0, er.renyi_2, es.renyi_2);
    report.renyi_k4_slack = renyi_slack(4.0, er.renyi_4, es.renyi_4);
    report.renyi_k6_slack = renyi_slack(6.0, er.renyi_6, es.renyi_6);

    const double rel = relative_entropy_nats(rho, sigma);
    report.relative_entropy_infinite = std::isinf(rel);
    report.pinsker_slack = report.relative_entropy_infinite
                               ? std::numeric_limits<double>::infinity()
                               : rel - 0.5 * full_dist * full_dist;
    return report;
}

}  // namespace

ContinuityReport continuity_checks(const ReducedState& rho, const ReducedState& sigma) {
    return continuity_impl(rho, sigma);
}

ContinuityReport continuity_checks(const StateVector& psi, const StateVector& phi, int n_A) {
    if (psi.n() != phi.n()) throw std::invalid_argument("state dimension mismatch");
    const ReducedState rho = partial_trace(psi, n_A);
    const ReducedState sigma = partial_trace(phi, n_A);
    ContinuityReport report = continuity_impl(rho, sigma);
    // ||rho - sigma||_1 for the pure global states: 2 sqrt(1 - |<psi|phi>|^2)
    const double overlap_sq = std::norm(psi.inner(phi));
    const double full_norm = 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap_sq));
    report.monotonicity_slack = full_norm - 2.0 * trace_distance(rho, sigma);
    return report;
}

bool ContinuityReport::all_hold(double tol) const {
    if (fannes_audenaert_slack < -tol) return false;
    if (renyi_k2_slack < -tol || renyi_k4_slack < -tol || renyi_k6_slack < -tol) return false;
    if (!relative_entropy_infinite && pinsker_slack < -tol) return false;
    if (monotonicity_slack && *monotonicity_slack < -tol) return false;
    return true;
}

namespace {

// best single-qubit factor given the others fixed: the normalized partial
// inner product of psi with the rank-1 complement, computed by contracting
// one qubit at a time (O(2^n) total)
double optimize_factor(const StateVector& psi, std::vector<Eigen::Vector2cd>& factors, int q,
                       std::vector<cxd>& work) {
    const int n = psi.n();
    const std::size_t dim = psi.dim();
    // repack amplitudes so qubit q is the least significant bit; bits above it
    // carry the remaining qubits in their original order
    work.resize(dim);
    const std::size_t low_mask = (std::size_t{1} << q) - 1;
    for (std::size_t b = 0; b < dim; ++b) {
        const std::size_t rest = ((b >> (q + 1)) << q) | (b & low_mask);
        work[(rest << 1) | ((b >> q) & 1)] = psi[b];
    }
    // contract the top qubit repeatedly: originals n-1..q+1, then q-1..0
    std::size_t size = dim;
    auto contract_top = [&](const Eigen::Vector2cd& f) {
        const std::size_t half = size / 2;
        const cxd c0 = std::conj(f(0)), c1 = std::conj(f(1));
        for (std::size_t i = 0; i < half; ++i) work[i] = c0 * work[i] + c1 * work[i + half];
        size = half;
    };
    for (int r = n - 1; r > q; --r) contract_top(factors[r]);
    for (int r = q - 1; r >= 0; --r) contract_top(factors[r]);
    Eigen::Vector2cd m(work[0], work[1]);
    const double nrm = m.norm();
    if (nrm > 1e-300) factors[q] = m / nrm;
    return nrm;  // |<alpha|psi>| at the optimum for this factor
}

}  // namespace

GeometricMeasure geometric_measure(const StateVector& state, int restarts, double tol) {
    if (state.n() > 14) throw std::invalid_argument("geometric measure supports n <= 14");
    if (restarts < 1) throw std::invalid_argument("restarts must be positive");
    constexpr int kMaxSweeps = 10000;
    const int n = state.n();
    double best = 0.0;
    bool converged_all = true;
    for (int r = 0; r < restarts; ++r) {
        std::vector<Eigen::Vector2cd> factors(n);
        for (int q = 0; q < n; ++q) {
            Eigen::Vector2cd v;
            for (int s = 0; s < 2; ++s)
                v(s) = cxd{rng::normal(rng::hash(0x6765, rng::kInitStream, (r * n + q) * 4u + s * 2u)),
                           rng::normal(rng::hash(0x6765, rng::kInitStream, (r * n + q) * 4u + s * 2u + 1))};
            factors[q] = v.normalized();
        }
        std::vector<cxd> work;
        double overlap = 0.0;
        bool settled = false;
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            double new_overlap = overlap;
            for (int q = 0; q < n; ++q) new_overlap = optimize_factor(state, factors, q, work);
            if (std::abs(new_overlap - overlap) < tol) {
                overlap = new_overlap;
                settled = true;
                break;
            }
            overlap = new_overlap;
        }
        converged_all = converged_all && settled;
        best = std::max(best, overlap * overlap);
    }
    GeometricMeasure gm{};
    gm.best_overlap_sq = best;
    gm.value = best > 0.0 ? -std::log2(best) : std::numeric_limits<double>::infinity();
    if (gm.value < 0.0 && gm.value > -1e-12) gm.value = 0.0;
    gm.converged = converged_all;
    return gm;
}

std::string to_json(const EntropyReport& r) {
    nlohmann::json j{{"n_A", r.n_A},       {"s_ee", r.s_ee},     {"renyi_2", r.renyi_2},
                     {"renyi_4", r.renyi_4}, {"renyi_6", r.renyi_6}, {"s_max", r.s_max},
                     {"s_min", r.s_min},   {"purity", r.purity}};
    return j.dump();
}

std::string to_json(const BoundsReport& r) {
    nlohmann::json j{{"n_A", r.n_A},
                     {"trace_dist_to_mixed", r.trace_dist_to_mixed},
                     {"upper", r.upper},
                     {"lower_k2", r.lower_k2},
                     {"lower_k4", r.lower_k4},
                     {"lower_k6", r.lower_k6},
                     {"asymptotic_lower", r.asymptotic_lower}};
    return j.dump();
}

}  // namespace entdiag
