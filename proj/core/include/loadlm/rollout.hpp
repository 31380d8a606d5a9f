#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadlm/backend.hpp"
#include "loadlm/prompt.hpp"
#include "loadlm/series.hpp"

namespace loadlm {

enum class ContextMode {
  Sliding,  ///< keep the last n sentences
  Growing,  ///< keep every sentence
};

enum class Fallback { PersistLast };

struct RolloutConfig {
  int n = 30;
  int m = 24;
  ContextMode context_mode = ContextMode::Sliding;
  /// Extra backend calls allowed per step after an unusable answer.
  int retry_limit = 3;
  Fallback fallback = Fallback::PersistLast;
};

/// Throws InvalidArgument on n < 1, m < 1 or retry_limit < 0.
void validate(const RolloutConfig& config);

enum class FaultKind {
  StrictParseFailed,  ///< text did not match the template but held a number
  Unparseable,        ///< no usable number (or a negative / non-finite one)
  TimestampMismatch,  ///< parsed timestamp differed from the schedule
};

enum class Recovery {
  LenientParse,    ///< value taken from the rightmost number in the text
  Retry,           ///< a later backend call produced a usable answer
  PersistLast,     ///< last known value repeated
  ScheduledTime,   ///< hint timestamp used instead of the generated one
};

[[nodiscard]] std::string_view to_string(FaultKind kind) noexcept;
[[nodiscard]] std::string_view to_string(Recovery recovery) noexcept;

struct Fault {
  int step = 0;  ///< 1-based forecast step
  FaultKind kind = FaultKind::Unparseable;
  Recovery recovery = Recovery::PersistLast;
  int attempts = 1;
  std::string raw;  ///< text of the first unusable answer

  friend bool operator==(const Fault&, const Fault&) = default;
};

struct ForecastResult {
  std::string building_id;
  Timestamp start_timestamp;       ///< timestamp of step 1
  std::vector<double> predictions;  ///< m values, rounded to the template precision
  std::vector<Sentence> transcript; ///< canonical sentence appended at each step
  std::vector<Fault> faults;

  /// First `m` steps of this result.
  [[nodiscard]] ForecastResult prefix(std::size_t m) const;

  friend bool operator==(const ForecastResult&, const ForecastResult&) = default;
};

/// Autoregressive rollout over `config.m` steps from exactly `config.n`
/// hourly history records.
///
/// Each step asks the backend for a sentence, parses it strictly, then
/// leniently, and re-asks up to `retry_limit` times when neither yields a
/// non-negative finite value. If every attempt fails the fallback applies.
/// The accepted value is re-rendered with the scheduled timestamp and
/// appended to the context. Backend exceptions propagate.
[[nodiscard]] ForecastResult forecast(std::span<const LoadRecord> history, SentenceBackend& backend,
                                      const PromptTemplate& tmpl, const RolloutConfig& config);

/// One rollout to the largest horizon; every horizon gets its prefix.
[[nodiscard]] std::map<int, ForecastResult> forecast_horizons(std::span<const LoadRecord> history,
                                                              SentenceBackend& backend, const PromptTemplate& tmpl,
                                                              const RolloutConfig& config,
                                                              const std::set<int>& horizons);

/// Audit JSON: {"building_id", "start", "predictions", "transcript", "faults"}.
[[nodiscard]] std::string to_json(const ForecastResult& result);
[[nodiscard]] ForecastResult forecast_from_json(std::string_view text);

}  // namespace loadlm
