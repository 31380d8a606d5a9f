#include "loadlm/evaluation.hpp"

#include <algorithm>
#include <tuple>

#include "loadlm/error.hpp"
#include "loadlm/metrics.hpp"

namespace loadlm {

void EvalReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const EvalRow& a, const EvalRow& b) {
    return std::tie(a.model, a.source_building, a.target_building, a.horizon) <
           std::tie(b.model, b.source_building, b.target_building, b.horizon);
  });
}

std::map<std::string, std::string> describe(const EvalOptions& options, const PromptTemplate& tmpl) {
  return {
      {"aggregation", "pooled"},
      {"stride", std::to_string(options.stride)},
      {"n", std::to_string(options.rollout.n)},
      {"context_mode", options.rollout.context_mode == ContextMode::Sliding ? "sliding" : "growing"},
      {"decimals", std::to_string(tmpl.decimals())},
  };
}

namespace {

std::vector<WindowPair> test_windows(const DatasetSplit& split, const EvalOptions& options, int horizon) {
  auto windows = make_windows(split.test, static_cast<std::size_t>(options.rollout.n),
                              static_cast<std::size_t>(horizon), options.stride);
  if (windows.empty()) {
    throw Error(ErrorCode::NoWindows, "test series '" + split.test.building_id() + "' (" +
                                          std::to_string(split.test.size()) + " h) holds no window with n = " +
                                          std::to_string(options.rollout.n) + ", m = " + std::to_string(horizon));
  }
  return windows;
}

std::vector<double> truth_prefix(const WindowPair& w, std::size_t m) {
  std::vector<double> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(w.target[i].consumption);
  return out;
}

std::size_t faults_through(const ForecastResult& r, int horizon) {
  return static_cast<std::size_t>(
      std::count_if(r.faults.begin(), r.faults.end(), [&](const Fault& f) { return f.step <= horizon; }));
}

EvalRow make_row(const EvalOptions& options, const SentenceBackend& backend, const std::string& target, int horizon) {
  EvalRow row;
  row.model = options.model.empty() ? backend.name() : options.model;
  row.source_building = options.source_building.empty() ? target : options.source_building;
  row.target_building = target;
  row.horizon = horizon;
  return row;
}

}  // namespace

EvalRow evaluate_building(const DatasetSplit& split, SentenceBackend& backend, const PromptTemplate& tmpl,
                          const EvalOptions& options) {
  validate(options.rollout);
  const auto windows = test_windows(split, options, options.rollout.m);
  const auto m = static_cast<std::size_t>(options.rollout.m);

  EvalRow row = make_row(options, backend, split.test.building_id(), options.rollout.m);
  ErrorAccumulator acc;
  for (const auto& w : windows) {
    const auto result = forecast(w.observation, backend, tmpl, options.rollout);
    if (options.on_forecast) options.on_forecast(result);
    acc.add(result.predictions, truth_prefix(w, m));
    row.faults += result.faults.size();
  }
  row.windows = windows.size();
  row.rmse = acc.rmse();
  row.mae = acc.mae();
  return row;
}

EvalReport horizon_sweep(const DatasetSplit& split, SentenceBackend& backend, const PromptTemplate& tmpl,
                         const EvalOptions& options, const std::set<int>& horizons) {
  if (horizons.empty() || *horizons.begin() < 1) {
    throw Error(ErrorCode::InvalidArgument, "horizons must be a non-empty set of positive integers");
  }
  validate(options.rollout);
  const int longest = *horizons.rbegin();
  const auto windows = test_windows(split, options, longest);

  std::map<int, ErrorAccumulator> acc;
  std::map<int, std::size_t> faults;
  for (const auto& w : windows) {
    const auto results = forecast_horizons(w.observation, backend, tmpl, options.rollout, horizons);
    if (options.on_forecast) options.on_forecast(results.at(longest));
    for (const auto& [h, r] : results) {
      acc[h].add(r.predictions, truth_prefix(w, static_cast<std::size_t>(h)));
      faults[h] += faults_through(r, h);
    }
  }

  EvalReport report;
  report.metadata = describe(options, tmpl);
  for (const int h : horizons) {
    EvalRow row = make_row(options, backend, split.test.building_id(), h);
    row.windows = windows.size();
    row.rmse = acc[h].rmse();
    row.mae = acc[h].mae();
    row.faults = faults[h];
    report.rows.push_back(std::move(row));
  }
  report.sort_rows();
  return report;
}

EvalReport zeroshot_matrix(const std::map<std::string, DatasetSplit>& splits, const std::vector<ZeroShotEntry>& entries,
                           const PromptTemplate& tmpl, const EvalOptions& options) {
  if (splits.size() < 2) throw Error(ErrorCode::InvalidArgument, "zero-shot evaluation needs at least two buildings");

  EvalReport report;
  report.metadata = describe(options, tmpl);
  for (const auto& entry : entries) {
    for (const auto& [target, split] : splits) {
      if (target == entry.source_building) continue;
      EvalOptions cell = options;
      cell.model = entry.model;
      cell.source_building = entry.source_building;
      try {
        const auto backend = entry.backend(target);
        if (!backend) throw Error(ErrorCode::InvalidArgument, "no backend for model " + entry.model);
        report.rows.push_back(evaluate_building(split, *backend, tmpl, cell));
      } catch (const std::exception& e) {
        EvalRow row;
        row.model = entry.model;
        row.source_building = entry.source_building;
        row.target_building = target;
        row.horizon = options.rollout.m;
        row.error = e.what();
        report.rows.push_back(std::move(row));
      }
    }
  }
  report.sort_rows();
  return report;
}

}  // namespace loadlm
