#include "loadlm/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <json.hpp>

#include "loadlm/error.hpp"

namespace loadlm {

void validate(const RolloutConfig& config) {
  if (config.n < 1) throw Error(ErrorCode::InvalidArgument, "observation length n must be >= 1");
  if (config.m < 1) throw Error(ErrorCode::InvalidArgument, "horizon m must be >= 1");
  if (config.retry_limit < 0) throw Error(ErrorCode::InvalidArgument, "retry_limit must be >= 0");
}

std::string_view to_string(FaultKind kind) noexcept {
  switch (kind) {
    case FaultKind::StrictParseFailed: return "strict_parse_failed";
    case FaultKind::Unparseable: return "unparseable";
    case FaultKind::TimestampMismatch: return "timestamp_mismatch";
  }
  return "unknown";
}

std::string_view to_string(Recovery recovery) noexcept {
  switch (recovery) {
    case Recovery::LenientParse: return "lenient_parse";
    case Recovery::Retry: return "retry";
    case Recovery::PersistLast: return "persist_last";
    case Recovery::ScheduledTime: return "scheduled_time";
  }
  return "unknown";
}

ForecastResult ForecastResult::prefix(std::size_t m) const {
  if (m > predictions.size()) throw Error(ErrorCode::InvalidArgument, "prefix longer than forecast");
  ForecastResult out;
  out.building_id = building_id;
  out.start_timestamp = start_timestamp;
  out.predictions.assign(predictions.begin(), predictions.begin() + static_cast<std::ptrdiff_t>(m));
  out.transcript.assign(transcript.begin(), transcript.begin() + static_cast<std::ptrdiff_t>(m));
  for (const auto& f : faults) {
    if (f.step <= static_cast<int>(m)) out.faults.push_back(f);
  }
  return out;
}

namespace {

struct Extracted {
  double value = 0.0;
  bool strict = false;
  std::optional<Timestamp> timestamp;
};

bool usable(double v) { return std::isfinite(v) && v >= 0.0; }

// Strict parse first, then lenient; nullopt when neither yields a usable value.
std::optional<Extracted> extract(const PromptTemplate& tmpl, const Sentence& sentence) {
  try {
    const auto parsed = parse_strict(tmpl, sentence);
    if (usable(parsed.value)) return Extracted{parsed.value, true, parsed.timestamp};
  } catch (const Error&) {
  }
  try {
    const double value = parse_lenient(sentence);
    if (usable(value)) return Extracted{value, false, std::nullopt};
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

ForecastResult forecast(std::span<const LoadRecord> history, SentenceBackend& backend, const PromptTemplate& tmpl,
                        const RolloutConfig& config) {
  validate(config);
  if (history.size() != static_cast<std::size_t>(config.n)) {
    throw Error(ErrorCode::InvalidArgument, "history has " + std::to_string(history.size()) +
                                                " records, expected n = " + std::to_string(config.n));
  }
  require_hourly(history, "forecast history");

  std::vector<Sentence> context = render_context(tmpl, history);
  const auto n = static_cast<std::size_t>(config.n);
  double last_value = round_half_away(history.back().consumption, tmpl.decimals());
  Timestamp hint = history.back().timestamp + kOneHour;

  ForecastResult result;
  result.building_id = history.front().building_id;
  result.start_timestamp = hint;
  result.predictions.reserve(static_cast<std::size_t>(config.m));
  result.transcript.reserve(static_cast<std::size_t>(config.m));

  for (int step = 1; step <= config.m; ++step) {
    const GenerationContext ctx{context, hint};
    std::optional<Extracted> accepted;
    std::optional<std::string> first_raw;
    int attempts = 0;
    while (!accepted && attempts <= config.retry_limit) {
      ++attempts;
      const auto answer = backend.next_sentence(ctx);
      accepted = extract(tmpl, answer.sentence);
      if ((!accepted || !accepted->strict) && !first_raw) first_raw = answer.sentence.text();
    }

    double value = last_value;
    if (!accepted) {
      result.faults.push_back({step, FaultKind::Unparseable, Recovery::PersistLast, attempts, *first_raw});
    } else {
      value = accepted->value;
      if (attempts > 1) {
        result.faults.push_back({step, FaultKind::Unparseable, Recovery::Retry, attempts, *first_raw});
      } else if (!accepted->strict) {
        result.faults.push_back({step, FaultKind::StrictParseFailed, Recovery::LenientParse, attempts, *first_raw});
      } else if (accepted->timestamp && *accepted->timestamp != hint) {
        result.faults.push_back({step, FaultKind::TimestampMismatch, Recovery::ScheduledTime, attempts,
                                 format_timestamp(*accepted->timestamp)});
      }
    }

    auto canonical = render(tmpl, {result.building_id, hint, value});
    value = round_half_away(value, tmpl.decimals());
    result.predictions.push_back(value);
    result.transcript.push_back(canonical);
    context.push_back(std::move(canonical));
    if (config.context_mode == ContextMode::Sliding && context.size() > n) context.erase(context.begin());
    last_value = value;
    hint += kOneHour;
  }
  return result;
}

std::map<int, ForecastResult> forecast_horizons(std::span<const LoadRecord> history, SentenceBackend& backend,
                                                const PromptTemplate& tmpl, const RolloutConfig& config,
                                                const std::set<int>& horizons) {
  if (horizons.empty()) throw Error(ErrorCode::InvalidArgument, "horizon set is empty");
  if (*horizons.begin() < 1) throw Error(ErrorCode::InvalidArgument, "horizons must be >= 1");
  RolloutConfig longest = config;
  longest.m = *horizons.rbegin();
  const auto full = forecast(history, backend, tmpl, longest);
  std::map<int, ForecastResult> out;
  for (const int h : horizons) out.emplace(h, full.prefix(static_cast<std::size_t>(h)));
  return out;
}

std::string to_json(const ForecastResult& result) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["building_id"] = result.building_id;
  doc["start"] = format_timestamp(result.start_timestamp);
  doc["predictions"] = result.predictions;
  auto transcript = ordered_json::array();
  for (const auto& s : result.transcript) transcript.push_back(s.text());
  doc["transcript"] = std::move(transcript);
  auto faults = ordered_json::array();
  for (const auto& f : result.faults) {
    faults.push_back({{"step", f.step},
                      {"kind", std::string(to_string(f.kind))},
                      {"recovery", std::string(to_string(f.recovery))},
                      {"attempts", f.attempts},
                      {"raw", f.raw}});
  }
  doc["faults"] = std::move(faults);
  return doc.dump();
}

namespace {

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& text, const std::array<Enum, N>& all) {
  for (const auto e : all) {
    if (to_string(e) == text) return e;
  }
  throw Error(ErrorCode::MalformedRow, "unknown enum value '" + text + "'");
}

}  // namespace

ForecastResult forecast_from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const auto doc = json::parse(text);
    ForecastResult out;
    out.building_id = doc.at("building_id").get<std::string>();
    const auto start = parse_timestamp(doc.at("start").get<std::string>());
    if (!start) throw Error(ErrorCode::BadTimestamp, doc.at("start").get<std::string>());
    out.start_timestamp = *start;
    out.predictions = doc.at("predictions").get<std::vector<double>>();
    for (const auto& s : doc.at("transcript")) out.transcript.emplace_back(s.get<std::string>());
    for (const auto& f : doc.at("faults")) {
      out.faults.push_back(Fault{
          f.at("step").get<int>(),
          enum_from(f.at("kind").get<std::string>(),
                    std::array{FaultKind::StrictParseFailed, FaultKind::Unparseable, FaultKind::TimestampMismatch}),
          enum_from(f.at("recovery").get<std::string>(),
                    std::array{Recovery::LenientParse, Recovery::Retry, Recovery::PersistLast, Recovery::ScheduledTime}),
          f.at("attempts").get<int>(),
          f.at("raw").get<std::string>(),
      });
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("forecast JSON: ") + e.what());
  }
}

}  // namespace loadlm
