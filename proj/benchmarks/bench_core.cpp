#include <benchmark/benchmark.h>

#include "hessianls/cauchy.hpp"
#include "hessianls/criteria.hpp"
#include "hessianls/field.hpp"
#include "hessianls/quadrature.hpp"

using namespace hessianls;

static void BM_SolveCauchy(benchmark::State& state) {
  const ProblemParams p{4, 2, 1.0, 1.0};
  const auto b = RadialProfile::power_tail(1.0);
  const auto grid = RadialGrid::hybrid(10.0, 1e5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_cauchy(p, b, grid));
  state.counters["nodes"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_SolveCauchy)->Arg(20)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

static void BM_Transform(benchmark::State& state) {
  const auto b = RadialProfile::power_tail(1.5);
  const auto grid = RadialGrid::hybrid(10.0, 1e4, 40);
  for (auto _ : state) {
    const KellerOssermanTransform t({5, 2}, b.as_function(), grid);
    benchmark::DoNotOptimize(t.potential(grid.r_max()));
  }
}
BENCHMARK(BM_Transform)->Unit(benchmark::kMillisecond);

static void BM_Radialize(benchmark::State& state) {
  const auto field = anisotropic_quadratic_field();
  const auto grid = RadialGrid::hybrid(10.0, 1e3, 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(radialize(field, grid, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_Radialize)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_OscillationCondition(benchmark::State& state) {
  const ProblemParams p{5, 2, 1.0, 1.0};
  const auto triple = oscillating_power_triple(1.0, 8.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(oscillation_condition(triple, p));
}
BENCHMARK(BM_OscillationCondition)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
