// Serial vs OpenMP kernels: Hankel sampling over an energy grid, a full bound
// table, and the AIM delta grid.

#include "rpm/aim.hpp"
#include "rpm/bounds.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace rpm;

const PrecisionContext kCtx{};
const PotentialSpec kTenth = PotentialSpec::quartic(mpq_class(1, 10));

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SampleGrid(benchmark::State& state) {
  const HankelIndex index(static_cast<int>(state.range(1)), 0);
  const Evaluator f = hankel_evaluator(kTenth, Parity(0), index, kCtx);
  const BigReal lo = BigReal::parse("0.5", kCtx), hi(4, kCtx);
  for (auto _ : state) benchmark::DoNotOptimize(sample_grid(f, lo, hi, 128, mode(state)));
}
BENCHMARK(BM_SampleGrid)->ArgsProduct({{0, 1}, {4, 10, 15}})->Unit(benchmark::kMillisecond);

void BM_BoundTable(benchmark::State& state) {
  BoundOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(bound_table(kTenth, StateSelector(0), 2, 15, kCtx, opts));
}
BENCHMARK(BM_BoundTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AimEstimate(benchmark::State& state) {
  AimOptions opts;
  opts.execution = mode(state);
  const EnergyWindow window{BigReal(0, kCtx), BigReal(20, kCtx)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(aim_estimate(AimSystem::harmonic(), BigReal::parse("0.5", kCtx), 8, window, kCtx, opts));
  }
}
BENCHMARK(BM_AimEstimate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
