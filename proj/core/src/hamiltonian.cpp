#include "entdiag/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "entdiag/rng.hpp"

namespace entdiag {

std::string to_string(HamiltonianKind kind) {
    switch (kind) {
        case HamiltonianKind::NNIsing: return "nn_ising";
        case HamiltonianKind::LongRangeIsing: return "long_range_ising";
        case HamiltonianKind::SYK4: return "syk4";
    }
    throw std::logic_error("unreachable");
}

HamiltonianKind hamiltonian_kind_from_string(const std::string& name) {
    if (name == "nn_ising") return HamiltonianKind::NNIsing;
    if (name == "long_range_ising") return HamiltonianKind::LongRangeIsing;
    if (name == "syk4") return HamiltonianKind::SYK4;
    throw std::invalid_argument("unknown hamiltonian kind: " + name);
}

HamiltonianModel::HamiltonianModel(HamiltonianKind kind, int n, std::vector<PauliTerm> terms)
    : kind_(kind), n_(n), terms_(std::move(terms)) {
    if (n < 2 || n > 20) throw std::invalid_argument("hamiltonian qubit count out of range");
    // term-dense hamiltonians apply through the cached matrix; building it
    // here keeps the matrix action lock-free and reentrant afterwards
    if (prefer_dense()) {
        dense();
        dense_real();
    }
}

bool HamiltonianModel::prefer_dense() const {
    // a dense matvec costs dim^2, the term path roughly 2 dim per term
    return n_ <= 12 && dim() < 2 * terms_.size();
}

void HamiltonianModel::apply(std::span<const cxd> in, std::span<cxd> out) const {
    if (in.size() != dim() || out.size() != dim()) throw std::invalid_argument("dimension mismatch");
    if (prefer_dense()) {
        Eigen::Map<const Eigen::VectorXcd> vin(in.data(), in.size());
        Eigen::Map<Eigen::VectorXcd> vout(out.data(), out.size());
        vout.noalias() = *dense_ * vin;  // built in the constructor
        return;
    }
    std::fill(out.begin(), out.end(), cxd{0.0, 0.0});
    for (const auto& term : terms_) accumulate_term(term, in, out);
}

void HamiltonianModel::apply_real(std::span<const double> in, std::span<double> out) const {
    if (in.size() != dim() || out.size() != dim()) throw std::invalid_argument("dimension mismatch");
    if (prefer_dense()) {
        Eigen::Map<const Eigen::VectorXd> vin(in.data(), in.size());
        Eigen::Map<Eigen::VectorXd> vout(out.data(), out.size());
        vout.noalias() = *dense_real_ * vin;  // built in the constructor
        return;
    }
    std::fill(out.begin(), out.end(), 0.0);
    for (const auto& term : terms_) accumulate_term_real(term, in, out);
}

const Eigen::MatrixXcd& HamiltonianModel::dense() const {
    if (n_ > 12) throw std::invalid_argument("dense matrix only cached for n <= 12");
    static std::mutex mu;
    std::scoped_lock lock(mu);
    if (!dense_) {
        auto H = std::make_shared<Eigen::MatrixXcd>(dense_matrix(terms_, n_));
        const double herm = (*H - H->adjoint()).cwiseAbs().maxCoeff();
        if (herm > 1e-12) throw std::runtime_error("hamiltonian failed hermiticity check");
        dense_ = std::move(H);
    }
    return *dense_;
}

const Eigen::MatrixXd& HamiltonianModel::dense_real() const {
    static std::mutex mu;
    std::scoped_lock lock(mu);
    if (!dense_real_) dense_real_ = std::make_shared<Eigen::MatrixXd>(dense().real());
    return *dense_real_;
}

HamiltonianModel build_nn_ising(int n, double g) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("nn ising requires even n >= 2");
    if (g < 0.0) throw std::invalid_argument("magnetic coupling must be non-negative");
    std::vector<PauliTerm> terms;
    terms.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
        const uint32_t zz = (1u << i) | (1u << ((i + 1) % n));
        terms.push_back({1.0, 0u, zz});
    }
    for (int i = 0; i < n; ++i) terms.push_back({g, 1u << i, 0u});
    HamiltonianModel H(HamiltonianKind::NNIsing, n, std::move(terms));
    H.g = g;
    return H;
}

HamiltonianModel build_long_range_ising(int n, double alpha, double g) {
    if (n < 2) throw std::invalid_argument("long-range ising requires n >= 2");
    if (alpha < 0.0) throw std::invalid_argument("decay exponent must be non-negative");
    std::vector<PauliTerm> terms;
    terms.reserve(n * (n - 1) / 2 + n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int d = std::min(j - i, n - (j - i));
            const double coeff = std::pow(static_cast<double>(d), -alpha);
            terms.push_back({coeff, 0u, (1u << i) | (1u << j)});
        }
    }
    for (int i = 0; i < n; ++i) terms.push_back({g, 1u << i, 0u});
    HamiltonianModel H(HamiltonianKind::LongRangeIsing, n, std::move(terms));
    H.g = g;
    H.alpha = alpha;
    return H;
}

PhasedString majorana_string(int m) {
    // gamma_{2k}  = 2^{-1/2} Z_0..Z_{k-1} X_k
    // gamma_{2k+1}= 2^{-1/2} Z_0..Z_{k-1} Y_k,  Y = i X Z
    const int k = m / 2;
    PhasedString s;
    s.phase = cxd{std::numbers::sqrt2 / 2.0, 0.0};
    for (int q = 0; q < k; ++q) s.z_mask |= 1u << q;
    s.x_mask |= 1u << k;
    if (m % 2 == 1) {
        s.z_mask |= 1u << k;
        s.phase *= cxd{0.0, 1.0};
    }
    return s;
}

namespace {

std::vector<PauliTerm> syk_terms(int n, const std::vector<SykCoupling>& couplings) {
    std::vector<PhasedString> gammas(2 * n);
    for (int m = 0; m < 2 * n; ++m) gammas[m] = majorana_string(m);
    std::vector<PauliTerm> terms;
    terms.reserve(couplings.size());
    for (const auto& c : couplings) {
        PhasedString prod = gammas[c.indices[0]] * gammas[c.indices[1]] *
                            gammas[c.indices[2]] * gammas[c.indices[3]];
        // i^{q/2} = i^2 = -1 overall prefactor
        cxd coeff = -c.value * prod.phase / pauli_phase(prod.x_mask, prod.z_mask);
        if (std::abs(coeff.imag()) > 1e-12 * (1.0 + std::abs(coeff.real())))
            throw std::logic_error("syk term failed to come out hermitian");
        terms.push_back({coeff.real(), prod.x_mask, prod.z_mask});
    }
    return terms;
}

}  // namespace

HamiltonianModel build_syk4(int n, uint64_t seed) {
    if (2 * n < 4) throw std::invalid_argument("syk4 requires at least 4 majoranas");
    if (n > 16) throw std::invalid_argument("syk4 supported for n <= 16");
    const int m = 2 * n;
    const double variance = 6.0 / (static_cast<double>(m) * m * m);  // (q-1)!/(2n)^{q-1}, q=4
    const double sigma = std::sqrt(variance);
    std::vector<SykCoupling> couplings;
    uint64_t index = 0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d) {
                    const double J = sigma * rng::normal(rng::hash(seed, rng::kCouplingStream, index++));
                    couplings.push_back({{a, b, c, d}, J});
                }
    HamiltonianModel H(HamiltonianKind::SYK4, n, syk_terms(n, couplings));
    H.coupling_seed = seed;
    H.couplings = std::move(couplings);
    return H;
}

double exact_nn_ising_energy(int n, double g) {
    if (n < 2) throw std::invalid_argument("chain requires n >= 2");
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double momentum = 2.0 * std::numbers::pi * (k + 0.5) / n;
        sum += std::sqrt(1.0 + g * g - 2.0 * g * std::cos(momentum));
    }
    return -sum;
}

double energy(const StateVector& state, const HamiltonianModel& H) {
    if (state.dim() != H.dim()) throw std::invalid_argument("state/hamiltonian dimension mismatch");
    std::vector<cxd> Hpsi(state.dim());
    H.apply(state.amps(), Hpsi);
    cxd e{0.0, 0.0};
    const auto amps = state.amps();
    for (std::size_t i = 0; i < Hpsi.size(); ++i) e += std::conj(amps[i]) * Hpsi[i];
    if (std::abs(e.imag()) > 1e-10)
        throw std::runtime_error("energy imaginary residue above tolerance");
    return e.real();
}

void dump_syk_couplings(const HamiltonianModel& H, const std::string& path) {
    if (H.kind() != HamiltonianKind::SYK4) throw std::invalid_argument("coupling dump is SYK-only");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : H.couplings)
        arr.push_back({{"indices", c.indices}, {"J", c.value}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << arr.dump(2) << "\n";
}

HamiltonianModel load_syk4(int n, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    nlohmann::json arr = nlohmann::json::parse(in);
    if (!arr.is_array()) throw std::runtime_error("coupling file must be a JSON array");
    std::vector<SykCoupling> couplings;
    couplings.reserve(arr.size());
    for (const auto& item : arr) {
        SykCoupling c{};
        const auto& idx = item.at("indices");
        if (!idx.is_array() || idx.size() != 4) throw std::runtime_error("coupling needs 4 indices");
        for (int k = 0; k < 4; ++k) c.indices[k] = idx[k].get<int>();
        if (c.indices[0] < 0 || c.indices[3] >= 2 * n ||
            !(c.indices[0] < c.indices[1] && c.indices[1] < c.indices[2] && c.indices[2] < c.indices[3]))
            throw std::runtime_error("coupling indices must be strictly increasing within [0, 2n)");
        c.value = item.at("J").get<double>();
        couplings.push_back(c);
    }
    HamiltonianModel H(HamiltonianKind::SYK4, n, syk_terms(n, couplings));
    H.couplings = std::move(couplings);
    return H;
}

}  // namespace entdiag
