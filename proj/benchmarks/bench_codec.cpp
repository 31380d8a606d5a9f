#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "loadlm/prompt.hpp"

namespace {

using namespace loadlm;

std::vector<LoadRecord> random_records(std::size_t count) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(0.0, 5000.0);
  const auto start = *make_timestamp(2019, 1, 1, 0);
  std::vector<LoadRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({"A", start + std::chrono::hours{static_cast<long long>(i)}, value(rng)});
  }
  return out;
}

void BM_Render(benchmark::State& state) {
  const PromptTemplate tmpl;
  const auto records = random_records(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(render(tmpl, records[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Render);

void BM_ParseStrict(benchmark::State& state) {
  const PromptTemplate tmpl;
  std::vector<Sentence> sentences;
  for (const auto& r : random_records(1024)) sentences.push_back(render(tmpl, r));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_strict(tmpl, sentences[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ParseStrict);

void BM_ParseLenient(benchmark::State& state) {
  const Sentence s("the load will probably be around 1234.5 kWh then");
  for (auto _ : state) benchmark::DoNotOptimize(parse_lenient(s));
}
BENCHMARK(BM_ParseLenient);

}  // namespace

BENCHMARK_MAIN();
