#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loadlm/series.hpp"
#include "loadlm/timestamp.hpp"

namespace loadlm {

inline constexpr int kMaxDecimals = 9;

/// Rounds half away from zero at `decimals` places: round(v * 10^d) / 10^d.
[[nodiscard]] double round_half_away(double value, int decimals);

/// Fixed-point text of `round_half_away(value, decimals)`, no grouping separators.
[[nodiscard]] std::string format_usage(double value, int decimals);

/// One line of text. Non-empty, never contains a newline.
class Sentence {
 public:
  explicit Sentence(std::string text);

  [[nodiscard]] const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  std::string text_;
};

/// Sentence template with exactly one `{Time}` and one `{Usage}` placeholder.
///
/// The placeholders must be separated by some literal text, and no other
/// braces may appear. `decimals` is the rounding precision for usage values.
class PromptTemplate {
 public:
  static constexpr std::string_view kDefaultPattern = "The electric load at {Time} is {Usage}.";
  static constexpr int kDefaultDecimals = 1;

  PromptTemplate() : PromptTemplate(std::string(kDefaultPattern), kDefaultDecimals) {}
  PromptTemplate(std::string pattern, int decimals);

  [[nodiscard]] const std::string& pattern() const noexcept { return pattern_; }
  [[nodiscard]] int decimals() const noexcept { return decimals_; }

  /// True when `{Time}` precedes `{Usage}` in the pattern.
  [[nodiscard]] bool time_first() const noexcept { return time_first_; }
  /// Literal text before (0), between (1) and after (2) the placeholders.
  [[nodiscard]] const std::string& literal(std::size_t i) const { return literals_.at(i); }
  [[nodiscard]] const std::string& normalized_literal(std::size_t i) const { return normalized_literals_.at(i); }

 private:
  std::string pattern_;
  int decimals_;
  bool time_first_ = true;
  // Literal text before, between and after the placeholders, verbatim and
  // whitespace-normalized.
  std::array<std::string, 3> literals_;
  std::array<std::string, 3> normalized_literals_;
};

struct ParsedSentence {
  Timestamp timestamp;
  double value = 0.0;
};

/// Substitutes the canonical timestamp and rounded usage into the template.
[[nodiscard]] Sentence render(const PromptTemplate& tmpl, const LoadRecord& record);

/// Inverse of `render`. Literal text must match exactly after collapsing runs
/// of whitespace to one space and trimming both ends.
///
/// Errors: NoMatch (literal mismatch), BadTimestamp, BadNumber.
[[nodiscard]] ParsedSentence parse_strict(const PromptTemplate& tmpl, const Sentence& sentence);

/// Rightmost maximal decimal-number token in the text. A leading '-' counts as
/// a sign only when it does not follow a letter, digit or dot. Errors: NoNumber.
[[nodiscard]] double parse_lenient(const Sentence& sentence);

/// One sentence per record. Errors: NotChronological.
[[nodiscard]] std::vector<Sentence> render_context(const PromptTemplate& tmpl, std::span<const LoadRecord> records);

/// Newline-joined sentences, no trailing newline.
[[nodiscard]] std::string join_sentences(std::span<const Sentence> sentences);

/// Collapses whitespace runs to single spaces and trims both ends.
[[nodiscard]] std::string normalize_whitespace(std::string_view text);

}  // namespace loadlm
