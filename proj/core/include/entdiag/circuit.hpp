#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "entdiag/state.hpp"

namespace entdiag {

enum class Architecture { Brickwall, Stochastic, Restricted };

std::string to_string(Architecture arch);
Architecture architecture_from_string(const std::string& name);

struct GateRecord {
    int layer;
    int i;
    int j;
    double theta_i;
    double theta_j;
    bool cz_applied;
};

// Layered circuit description: angles, entangler mask, pairing rule.
// Layer l (0-indexed) pairs (i, i+1 mod n) for i = l%2, l%2+2, ...,
// periodic along the chain. n must be even.
class CircuitSpec {
  public:
    // Angles drawn from U(0,2pi) keyed by (seed, layer, qubit); stochastic
    // architectures materialize the CZ mask once here, keeping it with
    // probability p.
    static CircuitSpec random(int n, int layers, Architecture arch, uint64_t seed, double p = 1.0);

    // all angles zero, all CZs applied (brickwall mask)
    static CircuitSpec zeros(int n, int layers, Architecture arch = Architecture::Brickwall);

    int n() const { return n_; }
    int layers() const { return layers_; }
    Architecture architecture() const { return arch_; }
    double cz_probability() const { return p_; }
    uint64_t seed() const { return seed_; }

    // angle applied to qubit i in layer l (restricted circuits replicate the
    // per-layer value on read)
    double angle(int layer, int qubit) const;

    bool cz_applied(int layer, int gate_index) const { return cz_mask_[layer][gate_index] != 0; }

    // free parameters: layers*n, or layers for restricted circuits
    int param_count() const;
    std::span<const double> params() const { return theta_; }
    void set_params(std::span<const double> params);

    // qubit pairs of one layer, disjoint, covering all n qubits
    std::vector<std::pair<int, int>> layer_pairs(int layer) const;
    std::vector<GateRecord> layer_gates(int layer) const;

  private:
    CircuitSpec() = default;
    void validate_layer(int layer) const;

    int n_ = 0;
    int layers_ = 0;
    Architecture arch_ = Architecture::Brickwall;
    double p_ = 1.0;
    uint64_t seed_ = 0;
    std::vector<double> theta_;                   // layers*n, or layers (restricted)
    std::vector<std::vector<uint8_t>> cz_mask_;   // [layer][gate]
};

// rotations of layer l, then the layer's surviving CZs
void apply_layer(StateVector& state, const CircuitSpec& spec, int layer);

// U(theta)|0...0>, with a norm re-check every 100 layers
StateVector run_circuit(const CircuitSpec& spec);

// as run_circuit, invoking visit(depth, state) at depth 0..layers
void run_circuit_traced(const CircuitSpec& spec,
                        const std::function<void(int, const StateVector&)>& visit);

}  // namespace entdiag
