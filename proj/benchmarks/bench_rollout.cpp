#include <benchmark/benchmark.h>

#include "loadlm/backend.hpp"
#include "loadlm/evaluation.hpp"
#include "loadlm/rollout.hpp"
#include "loadlm/synth.hpp"

namespace {

using namespace loadlm;

const LoadSeries& building() {
  static const LoadSeries series = [] {
    SynthConfig cfg;
    cfg.resolution_decimals = 1;
    return synth_generate(cfg, "A");
  }();
  return series;
}

// One rollout of `m` steps from a 30-hour history.
void BM_RolloutSeasonal(benchmark::State& state) {
  const PromptTemplate tmpl;
  SeasonalNaiveBackend backend(tmpl);
  RolloutConfig cfg;
  cfg.m = static_cast<int>(state.range(0));
  const auto history = building().records().subspan(100, 30);
  for (auto _ : state) benchmark::DoNotOptimize(forecast(history, backend, tmpl, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RolloutSeasonal)->Arg(1)->Arg(4)->Arg(12)->Arg(24);

void BM_EvaluateBuildingOracle(benchmark::State& state) {
  const PromptTemplate tmpl;
  OracleBackend oracle(building(), tmpl);
  const auto split = split_by_months(building(), MonthSplit{1, 1, 1});
  EvalOptions options;
  options.stride = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_building(split, oracle, tmpl, options));
}
BENCHMARK(BM_EvaluateBuildingOracle)->Arg(24)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
