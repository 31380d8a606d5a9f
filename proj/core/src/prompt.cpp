#include "loadlm/prompt.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "loadlm/error.hpp"

namespace loadlm {

namespace {

constexpr std::string_view kTimeTag = "{Time}";
constexpr std::string_view kUsageTag = "{Usage}";
// Canonical timestamp text is always `YYYY-MM-DD HH:MM`.
constexpr std::size_t kTimestampWidth = 16;

constexpr std::array<double, kMaxDecimals + 1> kPow10 = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::size_t count_occurrences(std::string_view text, std::string_view needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string_view::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

void check_decimals(int decimals) {
  if (decimals < 0 || decimals > kMaxDecimals) {
    throw Error(ErrorCode::InvalidArgument, "decimals must be in [0, " + std::to_string(kMaxDecimals) + "]");
  }
}

// Splits a pattern into (before, between, after) and reports placeholder order.
std::array<std::string, 3> split_pattern(std::string_view pattern, bool& time_first) {
  const auto t = pattern.find(kTimeTag);
  const auto u = pattern.find(kUsageTag);
  time_first = t < u;
  const auto first = time_first ? t : u;
  const auto first_len = time_first ? kTimeTag.size() : kUsageTag.size();
  const auto second = time_first ? u : t;
  const auto second_len = time_first ? kUsageTag.size() : kTimeTag.size();
  return {std::string(pattern.substr(0, first)),
          std::string(pattern.substr(first + first_len, second - first - first_len)),
          std::string(pattern.substr(second + second_len))};
}

}  // namespace

double round_half_away(double value, int decimals) {
  check_decimals(decimals);
  const double scale = kPow10[static_cast<std::size_t>(decimals)];
  const double scaled = value * scale;
  // Beyond 2^52 every double is already an integer at this scale.
  if (!std::isfinite(scaled) || std::fabs(scaled) >= 4503599627370496.0) return value;
  return std::round(scaled) / scale + 0.0;
}

std::string format_usage(double value, int decimals) {
  const double rounded = round_half_away(value, decimals);
  std::array<char, 512> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.*f", decimals, rounded);
  return std::string(buf.data(), static_cast<std::size_t>(len));
}

Sentence::Sentence(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw Error(ErrorCode::InvalidArgument, "sentence must not be empty");
  if (text_.find('\n') != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "sentence must not contain a newline");
  }
}

PromptTemplate::PromptTemplate(std::string pattern, int decimals) : pattern_(std::move(pattern)), decimals_(decimals) {
  check_decimals(decimals_);
  if (pattern_.find('\n') != std::string::npos) {
    throw Error(ErrorCode::InvalidTemplate, "pattern must be a single line");
  }
  if (count_occurrences(pattern_, kTimeTag) != 1 || count_occurrences(pattern_, kUsageTag) != 1) {
    throw Error(ErrorCode::InvalidTemplate, "pattern needs exactly one {Time} and one {Usage}: '" + pattern_ + "'");
  }
  literals_ = split_pattern(pattern_, time_first_);
  for (const auto& lit : literals_) {
    if (lit.find_first_of("{}") != std::string::npos) {
      throw Error(ErrorCode::InvalidTemplate, "pattern contains an unknown {...} token: '" + pattern_ + "'");
    }
  }
  bool normalized_order = true;
  normalized_literals_ = split_pattern(normalize_whitespace(pattern_), normalized_order);
  if (normalized_literals_[1].empty()) {
    throw Error(ErrorCode::InvalidTemplate, "placeholders must be separated by literal text");
  }
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Sentence render(const PromptTemplate& tmpl, const LoadRecord& record) {
  const auto time_text = format_timestamp(record.timestamp);
  const auto usage_text = format_usage(record.consumption, tmpl.decimals());
  std::string out;
  out.reserve(tmpl.pattern().size() + time_text.size() + usage_text.size());
  out += tmpl.literal(0);
  out += tmpl.time_first() ? time_text : usage_text;
  out += tmpl.literal(1);
  out += tmpl.time_first() ? usage_text : time_text;
  out += tmpl.literal(2);
  return Sentence(std::move(out));
}

namespace {

// Sequential matcher over a whitespace-normalized sentence.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void expect_literal(std::string_view literal) {
    if (text_.substr(pos_, literal.size()) != literal) {
      throw Error(ErrorCode::NoMatch, "expected '" + std::string(literal) + "' at column " + std::to_string(pos_ + 1) +
                                          " of '" + std::string(text_) + "'");
    }
    pos_ += literal.size();
  }

  Timestamp take_timestamp() {
    const auto field = text_.substr(pos_, kTimestampWidth);
    const auto ts = parse_timestamp(field);
    if (!ts) throw Error(ErrorCode::BadTimestamp, "'" + std::string(field) + "' in '" + std::string(text_) + "'");
    pos_ += field.size();
    return *ts;
  }

  double take_number() {
    const std::size_t begin = pos_;
    std::size_t end = begin;
    if (end < text_.size() && text_[end] == '-') ++end;
    const std::size_t int_begin = end;
    while (end < text_.size() && is_digit(text_[end])) ++end;
    if (end == int_begin) {
      throw Error(ErrorCode::BadNumber, "no number at column " + std::to_string(begin + 1) + " of '" +
                                            std::string(text_) + "'");
    }
    if (end + 1 < text_.size() && text_[end] == '.' && is_digit(text_[end + 1])) {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) ++end;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + begin, text_.data() + end, value);
    if (ec != std::errc{} || ptr != text_.data() + end || !std::isfinite(value)) {
      throw Error(ErrorCode::BadNumber, "'" + std::string(text_.substr(begin, end - begin)) + "'");
    }
    pos_ = end;
    return value + 0.0;
  }

  void expect_end() {
    if (pos_ != text_.size()) {
      throw Error(ErrorCode::NoMatch, "trailing text '" + std::string(text_.substr(pos_)) + "'");
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedSentence parse_strict(const PromptTemplate& tmpl, const Sentence& sentence) {
  const auto normalized = normalize_whitespace(sentence.text());
  Cursor cursor(normalized);
  ParsedSentence out;
  cursor.expect_literal(tmpl.normalized_literal(0));
  if (tmpl.time_first()) {
    out.timestamp = cursor.take_timestamp();
    cursor.expect_literal(tmpl.normalized_literal(1));
    out.value = cursor.take_number();
  } else {
    out.value = cursor.take_number();
    cursor.expect_literal(tmpl.normalized_literal(1));
    out.timestamp = cursor.take_timestamp();
  }
  cursor.expect_literal(tmpl.normalized_literal(2));
  cursor.expect_end();
  return out;
}

double parse_lenient(const Sentence& sentence) {
  const std::string_view text = sentence.text();
  std::size_t end = text.size();
  while (end > 0 && !is_digit(text[end - 1])) --end;
  if (end == 0) throw Error(ErrorCode::NoNumber, "'" + std::string(text) + "'");

  std::size_t begin = end;
  while (begin > 0 && is_digit(text[begin - 1])) --begin;
  if (begin >= 2 && text[begin - 1] == '.' && is_digit(text[begin - 2])) {
    begin -= 1;
    while (begin > 0 && is_digit(text[begin - 1])) --begin;
  }
  if (begin >= 1 && text[begin - 1] == '-') {
    const bool sign = begin == 1 || !(is_alnum(text[begin - 2]) || text[begin - 2] == '.');
    if (sign) --begin;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data() + begin, text.data() + end, value);
  if (ec != std::errc{} || !std::isfinite(value)) {
    throw Error(ErrorCode::NoNumber, "unrepresentable number in '" + std::string(text) + "'");
  }
  return value + 0.0;
}

std::vector<Sentence> render_context(const PromptTemplate& tmpl, std::span<const LoadRecord> records) {
  std::vector<Sentence> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0 && !(records[i - 1].timestamp < records[i].timestamp)) {
      throw Error(ErrorCode::NotChronological, "record " + std::to_string(i) + " at " +
                                                   format_timestamp(records[i].timestamp) + " is not after " +
                                                   format_timestamp(records[i - 1].timestamp));
    }
    out.push_back(render(tmpl, records[i]));
  }
  return out;
}

std::string join_sentences(std::span<const Sentence> sentences) {
  std::string out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += sentences[i].text();
  }
  return out;
}

}  // namespace loadlm
