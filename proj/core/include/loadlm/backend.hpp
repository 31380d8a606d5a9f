#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "loadlm/linear_ar.hpp"
#include "loadlm/prompt.hpp"
#include "loadlm/series.hpp"

namespace loadlm {

/// What a backend sees for one generation step: the history sentences,
/// oldest first, and the timestamp of the step to predict (one hour after
/// the last sentence).
struct GenerationContext {
  std::vector<Sentence> sentences;
  Timestamp next_timestamp_hint;
};

struct BackendAnswer {
  Sentence sentence;
  std::chrono::nanoseconds latency{0};
  int attempt = 1;
};

/// Produces the next sentence given a context.
///
/// Implementations signal infrastructure failures by throwing `Error` with a
/// backend-category code; malformed text is returned, not thrown.
class SentenceBackend {
 public:
  virtual ~SentenceBackend() = default;

  virtual BackendAnswer next_sentence(const GenerationContext& ctx) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

/// Answers with the true record at the hint. Test oracle.
class OracleBackend final : public SentenceBackend {
 public:
  OracleBackend(LoadSeries truth, PromptTemplate tmpl);

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override { return "oracle"; }

 private:
  LoadSeries truth_;
  PromptTemplate template_;
};

/// Repeats the value of the last context sentence.
class PersistenceBackend final : public SentenceBackend {
 public:
  explicit PersistenceBackend(PromptTemplate tmpl);

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override { return "persistence"; }

 private:
  PromptTemplate template_;
};

/// Repeats the value observed `period_hours` before the hint.
class SeasonalNaiveBackend final : public SentenceBackend {
 public:
  explicit SeasonalNaiveBackend(PromptTemplate tmpl, int period_hours = 24);

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override { return "seasonal:" + std::to_string(period_hours_); }
  [[nodiscard]] int period_hours() const noexcept { return period_hours_; }

 private:
  PromptTemplate template_;
  int period_hours_;
};

/// Replays a fixed list of sentences verbatim, one per call. Keeps a read
/// cursor, so a single instance must not be shared between threads.
class ScriptedBackend final : public SentenceBackend {
 public:
  explicit ScriptedBackend(std::vector<Sentence> script);

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override { return "scripted"; }
  [[nodiscard]] std::size_t consumed() const noexcept { return next_; }

 private:
  std::vector<Sentence> script_;
  std::size_t next_ = 0;
};

/// Ridge AR(p) predictor behind the sentence interface: parses the last p
/// context sentences and renders the clamped linear prediction.
class LinearArBackend final : public SentenceBackend {
 public:
  LinearArBackend(LinearArModel model, PromptTemplate tmpl);

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override;
  [[nodiscard]] const LinearArModel& model() const noexcept { return model_; }

 private:
  LinearArModel model_;
  PromptTemplate template_;
};

}  // namespace loadlm
