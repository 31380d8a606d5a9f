#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "loadlm/prompt.hpp"
#include "loadlm/series.hpp"

namespace loadlm {

/// Next-sentence training example: n newline-joined sentences and the sentence that follows.
struct FinetunePair {
  std::string input;
  std::string target;

  friend bool operator==(const FinetunePair&, const FinetunePair&) = default;
};

/// Evaluation window as exported: rendered observation, raw target values,
/// and the timestamp of the first target hour.
struct EvalWindowRecord {
  std::vector<std::string> observation;
  std::vector<double> targets;
  std::string start;

  friend bool operator==(const EvalWindowRecord&, const EvalWindowRecord&) = default;
};

/// Writes `{"input": ..., "target": ...}` JSON lines, sliding by one hour.
/// Returns L - n. Throws SeriesTooShort when L <= n, NotHourly on gaps.
std::size_t export_pairs(const LoadSeries& train, const PromptTemplate& tmpl, std::size_t n, std::ostream& sink);

/// Writes `{"observation": [...], "targets": [...], "start": ...}` JSON lines,
/// one per window of `make_windows(test, n, m, stride)`.
std::size_t export_eval_windows(const LoadSeries& test, const PromptTemplate& tmpl, std::size_t n, std::size_t m,
                                std::size_t stride, std::ostream& sink);

[[nodiscard]] std::vector<FinetunePair> read_pairs(std::istream& in);
[[nodiscard]] std::vector<EvalWindowRecord> read_eval_windows(std::istream& in);

}  // namespace loadlm
