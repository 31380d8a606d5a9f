#include "loadlm/finetune_export.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "loadlm/error.hpp"

namespace loadlm {

using nlohmann::json;
using nlohmann::ordered_json;

std::size_t export_pairs(const LoadSeries& train, const PromptTemplate& tmpl, std::size_t n, std::ostream& sink) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (train.size() <= n) {
    throw Error(ErrorCode::SeriesTooShort, "series '" + train.building_id() + "' has " +
                                               std::to_string(train.size()) + " records, need more than n = " +
                                               std::to_string(n));
  }
  require_hourly(train.records(), "training series '" + train.building_id() + "'");

  const auto sentences = render_context(tmpl, train.records());
  std::size_t written = 0;
  for (std::size_t start = 0; start + n < sentences.size(); ++start) {
    ordered_json line;
    line["input"] = join_sentences(std::span(sentences).subspan(start, n));
    line["target"] = sentences[start + n].text();
    sink << line.dump() << '\n';
    ++written;
  }
  if (!sink) throw Error(ErrorCode::Io, "write failed while exporting pairs");
  return written;
}

std::size_t export_eval_windows(const LoadSeries& test, const PromptTemplate& tmpl, std::size_t n, std::size_t m,
                                std::size_t stride, std::ostream& sink) {
  const auto windows = make_windows(test, n, m, stride);
  for (const auto& w : windows) {
    ordered_json line;
    auto observation = ordered_json::array();
    for (const auto& s : render_context(tmpl, w.observation)) observation.push_back(s.text());
    auto targets = ordered_json::array();
    for (const auto& r : w.target) targets.push_back(r.consumption);
    line["observation"] = std::move(observation);
    line["targets"] = std::move(targets);
    line["start"] = format_timestamp(w.target.front().timestamp);
    sink << line.dump() << '\n';
  }
  if (!sink) throw Error(ErrorCode::Io, "write failed while exporting windows");
  return windows.size();
}

namespace {

template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<FinetunePair> read_pairs(std::istream& in) {
  std::vector<FinetunePair> out;
  for_each_json_line(in, [&](const json& doc) {
    out.push_back({doc.at("input").get<std::string>(), doc.at("target").get<std::string>()});
  });
  return out;
}

std::vector<EvalWindowRecord> read_eval_windows(std::istream& in) {
  std::vector<EvalWindowRecord> out;
  for_each_json_line(in, [&](const json& doc) {
    out.push_back({doc.at("observation").get<std::vector<std::string>>(), doc.at("targets").get<std::vector<double>>(),
                   doc.at("start").get<std::string>()});
  });
  return out;
}

}  // namespace loadlm
