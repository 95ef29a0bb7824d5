#include "entdiag/circuit.hpp"

#include <numbers>
#include <stdexcept>

#include "entdiag/kernels.hpp"
#include "entdiag/rng.hpp"

namespace entdiag {

std::string to_string(Architecture arch) {
    switch (arch) {
        case Architecture::Brickwall: return "brickwall";
        case Architecture::Stochastic: return "stochastic";
        case Architecture::Restricted: return "restricted";
    }
    throw std::logic_error("unreachable");
}

Architecture architecture_from_string(const std::string& name) {
    if (name == "brickwall") return Architecture::Brickwall;
    if (name == "stochastic") return Architecture::Stochastic;
    if (name == "restricted") return Architecture::Restricted;
    throw std::invalid_argument("unknown architecture: " + name);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_shape(int n, int layers, double p) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("qubit count must be even and >= 2");
    if (n > 20) throw std::invalid_argument("qubit count above supported maximum of 20");
    if (layers < 0) throw std::invalid_argument("negative layer count");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("cz probability outside [0,1]");
}

}  // namespace

CircuitSpec CircuitSpec::random(int n, int layers, Architecture arch, uint64_t seed, double p) {
    check_shape(n, layers, p);
    CircuitSpec spec;
    spec.n_ = n;
    spec.layers_ = layers;
    spec.arch_ = arch;
    spec.p_ = (arch == Architecture::Stochastic) ? p : 1.0;
    spec.seed_ = seed;
    if (arch == Architecture::Restricted) {
        spec.theta_.resize(layers);
        for (int l = 0; l < layers; ++l)
            spec.theta_[l] = kTwoPi * rng::uniform(rng::hash(seed, rng::kAngleStream, l, 0));
    } else {
        spec.theta_.resize(static_cast<std::size_t>(layers) * n);
        for (int l = 0; l < layers; ++l)
            for (int i = 0; i < n; ++i)
                spec.theta_[static_cast<std::size_t>(l) * n + i] =
                    kTwoPi * rng::uniform(rng::hash(seed, rng::kAngleStream, l, i));
    }
    spec.cz_mask_.resize(layers);
    for (int l = 0; l < layers; ++l) {
        spec.cz_mask_[l].assign(n / 2, 1);
        if (arch == Architecture::Stochastic) {
            for (int g = 0; g < n / 2; ++g)
                spec.cz_mask_[l][g] = rng::uniform(rng::hash(seed, rng::kCzStream, l, g)) < p ? 1 : 0;
        }
    }
    return spec;
}

CircuitSpec CircuitSpec::zeros(int n, int layers, Architecture arch) {
    CircuitSpec spec = random(n, layers, arch, 0, 1.0);
    for (auto& t : spec.theta_) t = 0.0;
    return spec;
}

void CircuitSpec::validate_layer(int layer) const {
    if (layer < 0 || layer >= layers_) throw std::out_of_range("layer index out of range");
}

double CircuitSpec::angle(int layer, int qubit) const {
    validate_layer(layer);
    if (qubit < 0 || qubit >= n_) throw std::out_of_range("qubit index out of range");
    if (arch_ == Architecture::Restricted) return theta_[layer];
    return theta_[static_cast<std::size_t>(layer) * n_ + qubit];
}

int CircuitSpec::param_count() const {
    return arch_ == Architecture::Restricted ? layers_ : layers_ * n_;
}

void CircuitSpec::set_params(std::span<const double> params) {
    if (params.size() != theta_.size()) throw std::invalid_argument("parameter count mismatch");
    theta_.assign(params.begin(), params.end());
}

std::vector<std::pair<int, int>> CircuitSpec::layer_pairs(int layer) const {
    validate_layer(layer);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(n_ / 2);
    const int offset = layer % 2;
    for (int i = offset; i < n_ + offset; i += 2) pairs.emplace_back(i % n_, (i + 1) % n_);
    return pairs;
}

std::vector<GateRecord> CircuitSpec::layer_gates(int layer) const {
    const auto pairs = layer_pairs(layer);
    std::vector<GateRecord> gates;
    gates.reserve(pairs.size());
    for (std::size_t g = 0; g < pairs.size(); ++g) {
        const auto [i, j] = pairs[g];
        gates.push_back({layer, i, j, angle(layer, i), angle(layer, j), cz_applied(layer, static_cast<int>(g))});
    }
    return gates;
}

void apply_layer(StateVector& state, const CircuitSpec& spec, int layer) {
    if (state.n() != spec.n()) throw std::invalid_argument("state/spec qubit count mismatch");
    if (spec.n() % 2 != 0) throw std::invalid_argument("brickwall layering requires even n");
    for (int i = 0; i < spec.n(); ++i) apply_rotation(state, i, spec.angle(layer, i));
    const auto pairs = spec.layer_pairs(layer);
    for (std::size_t g = 0; g < pairs.size(); ++g)
        if (spec.cz_applied(layer, static_cast<int>(g))) apply_cz(state, pairs[g].first, pairs[g].second);
}

StateVector run_circuit(const CircuitSpec& spec) {
    StateVector state = StateVector::zero(spec.n());
    for (int l = 0; l < spec.layers(); ++l) {
        apply_layer(state, spec, l);
        if ((l + 1) % 100 == 0) state.check_norm(1e-10);
    }
    state.check_norm(1e-10);
    return state;
}

void run_circuit_traced(const CircuitSpec& spec,
                        const std::function<void(int, const StateVector&)>& visit) {
    StateVector state = StateVector::zero(spec.n());
    visit(0, state);
    for (int l = 0; l < spec.layers(); ++l) {
        apply_layer(state, spec, l);
        if ((l + 1) % 100 == 0) state.check_norm(1e-10);
        visit(l + 1, state);
    }
}

}  // namespace entdiag
