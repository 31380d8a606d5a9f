#include "loadlm/backend.hpp"

#include <algorithm>
#include <sstream>

#include "loadlm/error.hpp"

namespace loadlm {

namespace {

using Clock = std::chrono::steady_clock;

ParsedSentence parse_context_sentence(const PromptTemplate& tmpl, const Sentence& sentence) {
  try {
    return parse_strict(tmpl, sentence);
  } catch (const Error& e) {
    throw Error(ErrorCode::ContextUnparseable, "'" + sentence.text() + "' (" + e.what() + ")");
  }
}

void require_context(const GenerationContext& ctx) {
  if (ctx.sentences.empty()) throw Error(ErrorCode::ContextTooShort, "generation context is empty");
}

BackendAnswer answer(Sentence sentence, Clock::time_point started) {
  return BackendAnswer{std::move(sentence), Clock::now() - started, 1};
}

}  // namespace

OracleBackend::OracleBackend(LoadSeries truth, PromptTemplate tmpl)
    : truth_(std::move(truth)), template_(std::move(tmpl)) {}

BackendAnswer OracleBackend::next_sentence(const GenerationContext& ctx) {
  const auto started = Clock::now();
  const auto records = truth_.records();
  const auto it = std::lower_bound(records.begin(), records.end(), ctx.next_timestamp_hint,
                                   [](const LoadRecord& r, Timestamp ts) { return r.timestamp < ts; });
  if (it == records.end() || it->timestamp != ctx.next_timestamp_hint) {
    throw Error(ErrorCode::HintOutsideTruth, format_timestamp(ctx.next_timestamp_hint) +
                                                 " not in truth series '" + truth_.building_id() + "'");
  }
  return answer(render(template_, *it), started);
}

PersistenceBackend::PersistenceBackend(PromptTemplate tmpl) : template_(std::move(tmpl)) {}

BackendAnswer PersistenceBackend::next_sentence(const GenerationContext& ctx) {
  const auto started = Clock::now();
  require_context(ctx);
  const auto last = parse_context_sentence(template_, ctx.sentences.back());
  return answer(render(template_, {{}, ctx.next_timestamp_hint, last.value}), started);
}

SeasonalNaiveBackend::SeasonalNaiveBackend(PromptTemplate tmpl, int period_hours)
    : template_(std::move(tmpl)), period_hours_(period_hours) {
  if (period_hours_ < 1) throw Error(ErrorCode::InvalidArgument, "seasonal period must be >= 1 hour");
}

BackendAnswer SeasonalNaiveBackend::next_sentence(const GenerationContext& ctx) {
  const auto started = Clock::now();
  require_context(ctx);
  const auto period = static_cast<std::size_t>(period_hours_);
  const auto target = ctx.next_timestamp_hint - std::chrono::hours{period_hours_};
  if (ctx.sentences.size() < period) {
    throw Error(ErrorCode::PeriodNotCovered, "context of " + std::to_string(ctx.sentences.size()) +
                                                 " sentences is shorter than period " + std::to_string(period));
  }
  // Hourly context ending one hour before the hint puts the lag at size - period.
  const auto lagged = parse_context_sentence(template_, ctx.sentences[ctx.sentences.size() - period]);
  if (lagged.timestamp != target) {
    throw Error(ErrorCode::PeriodNotCovered, "expected a sentence at " + format_timestamp(target) + ", found " +
                                                 format_timestamp(lagged.timestamp));
  }
  return answer(render(template_, {{}, ctx.next_timestamp_hint, lagged.value}), started);
}

ScriptedBackend::ScriptedBackend(std::vector<Sentence> script) : script_(std::move(script)) {}

BackendAnswer ScriptedBackend::next_sentence(const GenerationContext&) {
  if (next_ >= script_.size()) {
    throw Error(ErrorCode::ScriptExhausted, "all " + std::to_string(script_.size()) + " scripted sentences consumed");
  }
  return BackendAnswer{script_[next_++], std::chrono::nanoseconds{0}, 1};
}

LinearArBackend::LinearArBackend(LinearArModel model, PromptTemplate tmpl)
    : model_(std::move(model)), template_(std::move(tmpl)) {}

BackendAnswer LinearArBackend::next_sentence(const GenerationContext& ctx) {
  const auto started = Clock::now();
  const auto p = static_cast<std::size_t>(model_.order());
  if (ctx.sentences.size() < p) {
    throw Error(ErrorCode::ContextTooShort, "AR(" + std::to_string(p) + ") needs " + std::to_string(p) +
                                                " context sentences, got " + std::to_string(ctx.sentences.size()));
  }
  std::vector<double> recent;
  recent.reserve(p);
  for (std::size_t i = ctx.sentences.size() - p; i < ctx.sentences.size(); ++i) {
    recent.push_back(parse_context_sentence(template_, ctx.sentences[i]).value);
  }
  return answer(render(template_, {{}, ctx.next_timestamp_hint, model_.predict(recent)}), started);
}

std::string LinearArBackend::name() const {
  std::ostringstream os;
  os << "linear-ar:" << model_.order() << ':' << model_.lambda();
  return os.str();
}

}  // namespace loadlm
