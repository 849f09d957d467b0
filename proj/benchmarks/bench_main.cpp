#include <benchmark/benchmark.h>

#include <random>

#include "ktrace/dilation.hpp"
#include "ktrace/disc.hpp"
#include "ktrace/kernel_integral.hpp"
#include "ktrace/spectral_shift.hpp"

namespace {

using namespace ktrace;

void BM_WindowDilation(benchmark::State& state) {
    const auto pair = random_pair(state.range(0), 0.2, 0.1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_window_dilation(pair.T, 8));
}
BENCHMARK(BM_WindowDilation)->Arg(4)->Arg(8)->Arg(16);

void BM_TraceTransfer(benchmark::State& state) {
    const auto pair = random_pair(state.range(0), 0.2, 0.1, 2);
    for (auto _ : state) benchmark::DoNotOptimize(dilation_trace_transfer(pair, 8, 8));
}
BENCHMARK(BM_TraceTransfer)->Arg(4)->Arg(8);

void BM_Moments(benchmark::State& state) {
    const auto pair = random_pair(state.range(0), 0.2, 0.1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(moments(pair, 64));
}
BENCHMARK(BM_Moments)->Arg(4)->Arg(16);

void BM_SemigroupIntegral(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const ComplexMatrix a = random_positive_contraction(state.range(0), 0.0, 1.0, rng);
    const ComplexMatrix b = random_positive_contraction(state.range(0), 0.2, 1.0, rng);
    for (auto _ : state) benchmark::DoNotOptimize(semigroup_integral(a, b, 1e-8));
}
BENCHMARK(BM_SemigroupIntegral)->Arg(4)->Arg(12);

void BM_DiscQuadrature(benchmark::State& state) {
    const auto pair = random_pair(4, 0.2, 0.1, 5);
    const SpectralShift xi = ssf_from_moments(moments(pair, static_cast<int>(state.range(0))));
    const LaurentSeries psi = LaurentSeries::from_modes({{1, 1.0}, {-2, 0.5}});
    DiscQuadratureConfig cfg;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(disc_integral_quadrature(xi, psi, 0.9, cfg));
}
BENCHMARK(BM_DiscQuadrature)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
