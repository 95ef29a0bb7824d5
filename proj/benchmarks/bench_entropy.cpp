#include <benchmark/benchmark.h>

#include "entdiag/entanglement.hpp"
#include "entdiag/circuit.hpp"

using namespace entdiag;

static void BM_PartialTraceEntropies(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector psi = run_circuit(CircuitSpec::random(n, 40, Architecture::Brickwall, 5));
    for (auto _ : state) {
        const EntropyReport rep = entropies(partial_trace(psi, n / 2));
        benchmark::DoNotOptimize(rep.s_ee);
    }
}
BENCHMARK(BM_PartialTraceEntropies)->Arg(8)->Arg(12)->Arg(14);

static void BM_TheoremBounds(benchmark::State& state) {
    StateVector psi = run_circuit(CircuitSpec::random(8, 30, Architecture::Brickwall, 6));
    const ReducedState rho = partial_trace(psi, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(theorem_bounds(rho).trace_dist_to_mixed);
    }
}
BENCHMARK(BM_TheoremBounds);
