#include "entdiag/ground.hpp"

#include <Eigen/Eigenvalues>

#include "entdiag/rng.hpp"

namespace entdiag {

namespace {

constexpr double kDegeneracyGap = 1e-9;
constexpr double kLanczosTol = 1e-10;
constexpr int kMaxMatvecs = 5000;
constexpr int kKrylovDim = 80;

double residual_norm(const HamiltonianModel& H, const Eigen::VectorXcd& x, double lambda) {
    Eigen::VectorXcd Hx(x.size());
    H.apply({x.data(), static_cast<std::size_t>(x.size())}, {Hx.data(), static_cast<std::size_t>(Hx.size())});
    return (Hx - lambda * x).norm();
}

GroundSolution dense_ground(const HamiltonianModel& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.dense());
    if (solver.info() != Eigen::Success) throw SolverFailure("dense eigensolver failed", 0.0);
    const double e0 = solver.eigenvalues()(0);
    const double e1 = solver.eigenvalues()(1);
    Eigen::VectorXcd v = solver.eigenvectors().col(0);
    std::vector<cxd> amps(v.data(), v.data() + v.size());
    GroundSolution sol{e0, StateVector(H.n(), std::move(amps)), e1 - e0 < kDegeneracyGap,
                       GroundSolver::Dense, 0.0};
    sol.residual = residual_norm(H, v, e0);
    return sol;
}

// One Lanczos pass with full reorthogonalization, deflating against `lock`.
// Returns the best Ritz pair found and the matvec count consumed.
struct RitzPair {
    double value;
    Eigen::VectorXcd vector;
    double residual;
};

RitzPair lanczos_pass(const HamiltonianModel& H, Eigen::VectorXcd v0,
                      const std::vector<Eigen::VectorXcd>& lock, int max_matvecs, int& used) {
    const auto dim = v0.size();
    auto project_out = [&](Eigen::VectorXcd& v) {
        for (const auto& u : lock) v -= u.dot(v) * u;
    };
    project_out(v0);
    v0.normalize();

    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    basis.push_back(v0);
    Eigen::VectorXcd w(dim);
    const int m = std::min(kKrylovDim, max_matvecs - used);
    for (int j = 0; j < m; ++j) {
        const auto& vj = basis[j];
        H.apply({vj.data(), static_cast<std::size_t>(dim)}, {w.data(), static_cast<std::size_t>(dim)});
        ++used;
        alpha.push_back(vj.dot(w).real());
        w -= alpha[j] * vj;
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        project_out(w);
        for (const auto& u : basis) w -= u.dot(w) * u;  // full reorthogonalization
        const double b = w.norm();
        if (b < 1e-14 || j == m - 1 || used >= max_matvecs) break;
        beta.push_back(b);
        basis.push_back(w / b);
    }

    const int k = static_cast<int>(basis.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) {
        T(j, j) = alpha[j];
        if (j + 1 < k) T(j, j + 1) = T(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < k; ++j) x += small.eigenvectors()(j, 0) * basis[j];
    project_out(x);
    x.normalize();
    const double lambda = small.eigenvalues()(0);
    return {lambda, std::move(x), 0.0};
}

RitzPair iterate_to_convergence(const HamiltonianModel& H, uint64_t seed_salt,
                                const std::vector<Eigen::VectorXcd>& lock, int& used,
                                int budget = kMaxMatvecs) {
    const auto dim = static_cast<Eigen::Index>(H.dim());
    Eigen::VectorXcd v0(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        v0(i) = cxd{rng::normal(rng::hash(0xed0, rng::kInitStream, seed_salt, 2 * i)),
                    rng::normal(rng::hash(0xed0, rng::kInitStream, seed_salt, 2 * i + 1))};
    RitzPair best{0.0, v0, 1e300};
    while (used < budget) {
        RitzPair pair = lanczos_pass(H, best.residual < 1e299 ? best.vector : v0, lock, budget, used);
        pair.residual = residual_norm(H, pair.vector, pair.value);
        ++used;
        best = pair;
        if (best.residual <= kLanczosTol * std::max(1.0, std::abs(best.value))) return best;
    }
    throw SolverFailure("lanczos did not converge within matvec budget", best.residual);
}

GroundSolution iterative_ground(const HamiltonianModel& H) {
    int used = 0;
    RitzPair lowest = iterate_to_convergence(H, 1, {}, used);
    // second pass, deflated, on a reduced budget: it only sets the flag
    bool degenerate = false;
    try {
        std::vector<Eigen::VectorXcd> lock{lowest.vector};
        int used2 = 0;
        RitzPair second = iterate_to_convergence(H, 2, lock, used2, 1000);
        degenerate = second.value - lowest.value < kDegeneracyGap;
    } catch (const SolverFailure&) {
        // flag stays false; the primary pair converged
    }
    std::vector<cxd> amps(lowest.vector.data(), lowest.vector.data() + lowest.vector.size());
    return {lowest.value, StateVector(H.n(), std::move(amps)), degenerate, GroundSolver::Iterative,
            lowest.residual};
}

}  // namespace

GroundSolution ground_state(const HamiltonianModel& H) {
    if (H.n() > 16) throw std::invalid_argument("ground_state supports n <= 16");
    return H.n() <= 12 ? dense_ground(H) : iterative_ground(H);
}

GroundSolution ground_state_iterative(const HamiltonianModel& H) {
    if (H.n() > 16) throw std::invalid_argument("ground_state supports n <= 16");
    return iterative_ground(H);
}

}  // namespace entdiag
