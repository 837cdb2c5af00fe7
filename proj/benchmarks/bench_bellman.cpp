#include <benchmark/benchmark.h>

#include "bellman/analysis.hpp"
#include "bellman/hardy.hpp"

namespace {

const bellman::Exponents kE(2.0, 1.5);

void BM_Omega(benchmark::State& state) {
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellman::omega(s, 1.5));
    s = s < 0.9 ? s + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_Omega);

void BM_SharpConstant(benchmark::State& state) {
  double s2 = 0.72;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellman::sharp_constant({0.5, s2}, kE));
    s2 = s2 < 0.99 ? s2 + 1e-3 : 0.72;
  }
}
BENCHMARK(BM_SharpConstant);

void BM_Scan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bellman::scan_monotonicity(0.75, kE, n));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Scan)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_HardyTrial(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bellman::check_inequality(bellman::random_step(seed++), kE));
}
BENCHMARK(BM_HardyTrial)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
