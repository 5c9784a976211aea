#include <benchmark/benchmark.h>

#include "resolvent/eigenfunctions.hpp"
#include "resolvent/green_kernel.hpp"
#include "resolvent/piecewise_engine.hpp"

using namespace resolvent;

namespace {

const SquareBarrier kBarrier{5.0, 1.0, 2.0};

void BM_ChiCoefficients(benchmark::State& state) {
    const ComplexEnergy e{1.5, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(chi_coefficients(kBarrier, e));
}
BENCHMARK(BM_ChiCoefficients);

void BM_KernelBuildClosedForm(benchmark::State& state) {
    const ComplexEnergy e{1.5, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(make_kernel(kBarrier, e, Direction::plus));
}
BENCHMARK(BM_KernelBuildClosedForm);

// engine cost against the number of segments
void BM_KernelBuildEngine(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> bps;
    std::vector<double> hs{0.0};
    for (int i = 1; i <= n; ++i) {
        bps.push_back(1.0 + i * 0.25);
        hs.push_back(i % 2 ? 5.0 : 2.0);
    }
    hs.back() = 0.0;
    const PiecewisePotential p(bps, hs);
    const ComplexEnergy e{1.5, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(make_kernel(p, e, Direction::plus));
}
BENCHMARK(BM_KernelBuildEngine)->RangeMultiplier(2)->Range(2, 64);

void BM_KernelEvaluate(benchmark::State& state) {
    const GreenKernel g = make_kernel(kBarrier, ComplexEnergy{1.5, 0.2}, Direction::plus);
    double r = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g(r, 1.7));
        r = r > 5.0 ? 0.0 : r + 0.013;
    }
}
BENCHMARK(BM_KernelEvaluate);

void BM_BoundaryLimit(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(boundary_limit(kBarrier, 1.0, 0.5, 3.0, Direction::plus, 0.1));
}
BENCHMARK(BM_BoundaryLimit)->Unit(benchmark::kMicrosecond);

void BM_PoleScan(benchmark::State& state) {
    const SearchBox box{0.0, 25.0, -8.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(find_kernel_poles(kBarrier, box));
}
BENCHMARK(BM_PoleScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
