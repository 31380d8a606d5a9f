#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loadlm/backend.hpp"
#include "loadlm/rollout.hpp"
#include "loadlm/series.hpp"

namespace loadlm {

/// One cell of a result table. `error` is set when the cell could not be
/// evaluated; the metric fields are then meaningless.
struct EvalRow {
  std::string model;
  std::string source_building;
  std::string target_building;
  int horizon = 0;
  double rmse = 0.0;
  double mae = 0.0;
  std::size_t windows = 0;
  std::size_t faults = 0;
  std::optional<std::string> error;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  /// Free-form settings that shaped the numbers (aggregation, stride, n, ...).
  std::map<std::string, std::string> metadata;

  /// Rows ordered by (model, source, target, horizon).
  void sort_rows();
};

struct EvalOptions {
  RolloutConfig rollout;
  std::size_t stride = 24;
  std::string model;            ///< row label; defaults to the backend name
  std::string source_building;  ///< fine-tuning building; defaults to the evaluated one
  /// Called with every finished rollout, e.g. to keep an audit trail.
  std::function<void(const ForecastResult&)> on_forecast;
};

/// Runs a rollout on every test window and pools all (window, step) errors
/// into one RMSE / MAE. Errors: NoWindows.
[[nodiscard]] EvalRow evaluate_building(const DatasetSplit& split, SentenceBackend& backend,
                                        const PromptTemplate& tmpl, const EvalOptions& options);

/// One max-horizon rollout per window; row h pools the first h steps.
[[nodiscard]] EvalReport horizon_sweep(const DatasetSplit& split, SentenceBackend& backend,
                                       const PromptTemplate& tmpl, const EvalOptions& options,
                                       const std::set<int>& horizons = {1, 4, 12, 24});

/// Supplies the backend used when a model is evaluated on `target_building`.
/// Language-model backends ignore the argument; the oracle needs it.
using BackendProvider = std::function<std::shared_ptr<SentenceBackend>(const std::string& target_building)>;

struct ZeroShotEntry {
  std::string model;
  std::string source_building;
  BackendProvider backend;
};

/// Evaluates every (model, source) entry on every building other than its
/// source. A failing cell becomes a row with `error` set; the run continues.
/// Errors: InvalidArgument when fewer than two buildings are given.
[[nodiscard]] EvalReport zeroshot_matrix(const std::map<std::string, DatasetSplit>& splits,
                                         const std::vector<ZeroShotEntry>& entries, const PromptTemplate& tmpl,
                                         const EvalOptions& options);

/// Metadata common to every report produced with `options`.
[[nodiscard]] std::map<std::string, std::string> describe(const EvalOptions& options, const PromptTemplate& tmpl);

}  // namespace loadlm
