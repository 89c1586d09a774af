// Serial reference vs OpenMP kernels on the time-grid workloads.
#include <benchmark/benchmark.h>

#include "spinrotor/kernels.hpp"
#include "spinrotor/oracle.hpp"
#include "spinrotor/scenarios.hpp"

using namespace spinrotor;

namespace {

const ModelParams kFig1{1.0, 2.0, 0.5};

void BM_DynamicsSeries(benchmark::State& state, Execution exec) {
  const auto initial = random_state(42, 5, 6);
  const TimeGrid grid(10.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynamics_series(kFig1, initial, grid, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Verify(benchmark::State& state, Execution exec) {
  const auto scenario = make_scenario("random-multisector", kFig1);
  const auto grid = TimeGrid(10.0, static_cast<int>(state.range(0))).points();
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::verify_against_analytic(scenario, grid, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_DynamicsSeries, serial, Execution::serial)->Arg(2001)->Arg(20001);
BENCHMARK_CAPTURE(BM_DynamicsSeries, parallel, Execution::parallel)->Arg(2001)->Arg(20001);
BENCHMARK_CAPTURE(BM_Verify, serial, Execution::serial)->Arg(2001);
BENCHMARK_CAPTURE(BM_Verify, parallel, Execution::parallel)->Arg(2001);

BENCHMARK_MAIN();
