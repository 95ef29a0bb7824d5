#include <benchmark/benchmark.h>

#include "entdiag/gradient.hpp"

using namespace entdiag;

static void BM_AdjointGradient(benchmark::State& state) {
    const int n = 8;
    const int L = static_cast<int>(state.range(0));
    const HamiltonianModel H = build_nn_ising(n, 2.0);
    CircuitSpec spec = CircuitSpec::random(n, L, Architecture::Brickwall, 3);
    AdjointEngine engine(spec, H);
    std::vector<double> grad(spec.param_count());
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.energy_and_gradient(grad));
    }
    state.SetItemsProcessed(state.iterations() * spec.param_count());
}
BENCHMARK(BM_AdjointGradient)->Arg(8)->Arg(24)->Arg(96);

static void BM_AdjointGradientSyk(benchmark::State& state) {
    const int n = 8;
    const HamiltonianModel H = build_syk4(n, 11);
    CircuitSpec spec = CircuitSpec::random(n, static_cast<int>(state.range(0)),
                                           Architecture::Brickwall, 3);
    AdjointEngine engine(spec, H);
    std::vector<double> grad(spec.param_count());
    for (auto _ : state) {
        benchmark::DoNotOptimize(engine.energy_and_gradient(grad));
    }
}
BENCHMARK(BM_AdjointGradientSyk)->Arg(8)->Arg(24);
