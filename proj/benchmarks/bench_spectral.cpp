#include <benchmark/benchmark.h>

#include <cmath>

#include "hypspec/modes.hpp"
#include "hypspec/sturm1d.hpp"
#include "hypspec/weyl.hpp"

using namespace hypspec;

static void BM_CountBelow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto T = discretize([](double t) { return t * t; }, -12.0, 12.0, n);
  for (auto _ : state) benchmark::DoNotOptimize(count_below(T, 40.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountBelow)->RangeMultiplier(4)->Range(256, 262144)->Complexity(benchmark::oN);

static void BM_CountEndCusp(benchmark::State& state) {
  const End e{CuspEnd{1.0, 0.0, RadialField(FieldKind::cusp_y_poly, {0.0, 1.0}), 0.0}};
  const double lambda = static_cast<double>(state.range(0));
  ModeOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_end(e, lambda, opts).count);
}
BENCHMARK(BM_CountEndCusp)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_CountEndFunnel(benchmark::State& state) {
  const End e{FunnelEnd{1.0, 0.0, RadialField(FieldKind::funnel_cosh_poly, {0.0, 1.0}), 0.0}};
  const double lambda = static_cast<double>(state.range(0));
  ModeOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(count_end(e, lambda, opts).count);
}
BENCHMARK(BM_CountEndFunnel)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_WeylIntegral(benchmark::State& state) {
  SurfaceEnds ends;
  ends.funnels.push_back({1.0, 0.0, RadialField(FieldKind::funnel_cosh_poly, {0.5, 1.0}), 0.3});
  ends.cusps.push_back({1.0, 0.0, RadialField(FieldKind::cusp_y_poly, {1.0, 0.0, 2.0}), 0.0});
  const double lambda = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_integral(ends, lambda));
}
BENCHMARK(BM_WeylIntegral)->Arg(100)->Arg(10000)->Arg(1000000);

BENCHMARK_MAIN();
