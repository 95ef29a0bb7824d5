#include <benchmark/benchmark.h>

#include "entdiag/circuit.hpp"

using namespace entdiag;

static void BM_ApplyLayer(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    CircuitSpec spec = CircuitSpec::random(n, 8, Architecture::Brickwall, 1);
    StateVector psi = StateVector::zero(n);
    int layer = 0;
    for (auto _ : state) {
        apply_layer(psi, spec, layer);
        layer = (layer + 1) % 8;
        benchmark::DoNotOptimize(psi.amps().data());
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_ApplyLayer)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

static void BM_RunCircuit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    CircuitSpec spec = CircuitSpec::random(n, 250, Architecture::Brickwall, 2);
    for (auto _ : state) {
        StateVector psi = run_circuit(spec);
        benchmark::DoNotOptimize(psi.amps().data());
    }
}
BENCHMARK(BM_RunCircuit)->Arg(8)->Arg(12);
