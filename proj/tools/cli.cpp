#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "loadlm/backend.hpp"
#include "loadlm/csv_io.hpp"
#include "loadlm/error.hpp"
#include "loadlm/evaluation.hpp"
#include "loadlm/finetune_export.hpp"
#include "loadlm/linear_ar.hpp"
#include "loadlm/prompt.hpp"
#include "loadlm/remote_backend.hpp"
#include "loadlm/report.hpp"
#include "loadlm/rollout.hpp"
#include "loadlm/series.hpp"
#include "loadlm/synth.hpp"

namespace loadlm::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// JSON config file: top-level keys are main-app options, nested objects are
// subcommand sections, e.g. {"evaluate": {"backend": "persistence", "n": 30}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json doc = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const auto& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        doc[name] = opt->as<std::string>();
      } else if (default_also && !opt->get_default_str().empty()) {
        doc[name] = opt->get_default_str();
      }
    }
    return doc.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    const auto doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw CLI::ConversionError("config file is not a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        collect(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct CommonOptions {
  std::string data;
  std::string pattern = std::string(PromptTemplate::kDefaultPattern);
  int decimals = PromptTemplate::kDefaultDecimals;
  int n = 30;
  int m = 24;
  std::size_t stride = 24;
  std::string context_mode = "sliding";
  std::string split = "auto";
  int max_gap = kDefaultMaxGapHours;
  int retry_limit = 3;
  // remote backend
  int timeout_ms = 30000;
  int retries = 3;
  int max_new_tokens = 32;
};

struct SynthOptions {
  std::uint64_t seed = 0;
  int days = 90;
  int buildings = 6;
  int resolution = 1;
  std::optional<double> base_load;
  std::optional<double> daily_amplitude;
  std::optional<double> weekly_amplitude;
  std::optional<double> noise_sd;
};

std::string building_name(int index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "B" + std::to_string(index + 1);
}

std::vector<LoadSeries> synth_buildings(const SynthOptions& opts) {
  std::vector<LoadSeries> out;
  for (int i = 0; i < opts.buildings; ++i) {
    SynthConfig cfg;
    cfg.seed = opts.seed * 1000 + static_cast<std::uint64_t>(i);
    cfg.days = opts.days;
    cfg.base_load = opts.base_load.value_or(80.0 + 35.0 * i);
    cfg.daily_amplitude = opts.daily_amplitude.value_or(25.0 + 5.0 * i);
    cfg.weekly_amplitude = opts.weekly_amplitude.value_or(8.0 + 2.0 * i);
    cfg.noise_sd = opts.noise_sd.value_or(3.0 + 0.5 * i);
    cfg.resolution_decimals = opts.resolution;
    out.push_back(synth_generate(cfg, building_name(i)));
  }
  return out;
}

PromptTemplate make_template(const CommonOptions& c) { return PromptTemplate(c.pattern, c.decimals); }

RolloutConfig make_rollout(const CommonOptions& c) {
  RolloutConfig r;
  r.n = c.n;
  r.m = c.m;
  r.retry_limit = c.retry_limit;
  r.context_mode = c.context_mode == "growing" ? ContextMode::Growing : ContextMode::Sliding;
  validate(r);
  return r;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, what + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, what + " is empty");
  return out;
}

// `auto`: last month tests, the month before validates, everything earlier
// trains. On a 24-month series this is the 22/1/1 layout.
MonthSplit parse_split(const std::string& text) {
  if (text == "auto") return MonthSplit{1, 1, 1};
  const auto parts = parse_int_list(text, "--split");
  if (parts.size() != 3) throw Error(ErrorCode::InvalidArgument, "--split needs TRAIN,VAL,TEST months");
  return MonthSplit{parts[0], parts[1], parts[2]};
}

std::set<int> parse_horizons(const std::string& text) {
  std::set<int> out;
  for (const int h : parse_int_list(text, "--horizons")) {
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "--horizons must be positive integers");
    out.insert(h);
  }
  return out;
}

// `--data` is a CSV path or `synth:SEED:DAYS:BUILDINGS`.
std::map<std::string, LoadSeries> load_dataset(const CommonOptions& c) {
  std::map<std::string, LoadSeries> raw;
  if (c.data.starts_with("synth:")) {
    auto fields = c.data.substr(6);
    std::replace(fields.begin(), fields.end(), ':', ',');
    const auto parts = parse_int_list(fields, "--data synth");
    SynthOptions s;
    if (parts.size() < 2 || parts.size() > 3) {
      throw Error(ErrorCode::InvalidArgument, "--data synth:SEED:DAYS[:BUILDINGS]");
    }
    s.seed = static_cast<std::uint64_t>(parts[0]);
    s.days = parts[1];
    if (parts.size() == 3) s.buildings = parts[2];
    for (auto& series : synth_buildings(s)) raw.emplace(series.building_id(), std::move(series));
  } else {
    raw = ingest_csv_file(c.data);
  }
  std::map<std::string, LoadSeries> out;
  for (const auto& [id, series] : raw) out.emplace(id, repair_gaps(series, c.max_gap));
  return out;
}

const LoadSeries& find_building(const std::map<std::string, LoadSeries>& data, const std::string& id) {
  const auto it = data.find(id);
  if (it == data.end()) {
    std::string available;
    for (const auto& [key, _] : data) available += (available.empty() ? "" : ", ") + key;
    throw Error(ErrorCode::InvalidArgument, "unknown building '" + id + "'; available: " + available);
  }
  return it->second;
}

std::vector<std::string> select_buildings(const std::map<std::string, LoadSeries>& data,
                                          const std::vector<std::string>& requested) {
  if (!requested.empty()) {
    for (const auto& id : requested) (void)find_building(data, id);
    return requested;
  }
  std::vector<std::string> all;
  for (const auto& [id, _] : data) all.push_back(id);
  return all;
}

std::map<std::string, DatasetSplit> split_all(const std::map<std::string, LoadSeries>& data, const CommonOptions& c) {
  const auto months = parse_split(c.split);
  std::map<std::string, DatasetSplit> out;
  for (const auto& [id, series] : data) out.emplace(id, split_by_months(series, months));
  return out;
}

// Backend specs: oracle | persistence | seasonal[:PERIOD] | linear-ar:P:LAMBDA |
// remote[:URL] | scripted:FILE
struct BackendFactory {
  const CommonOptions& common;
  const PromptTemplate& tmpl;

  std::shared_ptr<SentenceBackend> make(const std::string& spec, const DatasetSplit& source,
                                        const LoadSeries& target_truth) const {
    const auto colon = spec.find(':');
    const auto kind = spec.substr(0, colon);
    const auto arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);

    if (kind == "oracle") return std::make_shared<OracleBackend>(target_truth, tmpl);
    if (kind == "persistence") return std::make_shared<PersistenceBackend>(tmpl);
    if (kind == "seasonal") {
      const int period = arg.empty() ? 24 : parse_int_list(arg, "seasonal period").front();
      return std::make_shared<SeasonalNaiveBackend>(tmpl, period);
    }
    if (kind == "linear-ar") {
      const auto sep = arg.find(':');
      if (sep == std::string::npos) throw Error(ErrorCode::InvalidArgument, "backend spec linear-ar:P:LAMBDA");
      const int order = parse_int_list(arg.substr(0, sep), "linear-ar order").front();
      double lambda = 0.0;
      try {
        lambda = std::stod(arg.substr(sep + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "linear-ar lambda '" + arg.substr(sep + 1) + "'");
      }
      const auto values = source.train.values();
      return std::make_shared<LinearArBackend>(LinearArModel::fit(values, order, lambda), tmpl);
    }
    if (kind == "remote") {
      std::string url = arg;
      if (url.empty()) {
        const char* env = std::getenv("LM_ENDPOINT");
        if (env == nullptr || *env == '\0') {
          throw Error(ErrorCode::InvalidArgument, "remote backend needs a URL or LM_ENDPOINT");
        }
        url = env;
      }
      RemoteOptions opts;
      opts.timeout = std::chrono::milliseconds{common.timeout_ms};
      opts.retry.max_attempts = common.retries;
      opts.max_new_tokens = common.max_new_tokens;
      return std::make_shared<RemoteBackend>(url, opts);
    }
    if (kind == "scripted") {
      std::ifstream in(arg);
      if (!in) throw Error(ErrorCode::Io, "cannot open script '" + arg + "'");
      std::vector<Sentence> script;
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) script.emplace_back(line);
      }
      return std::make_shared<ScriptedBackend>(std::move(script));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown backend spec '" + spec + "'");
  }
};

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

std::string file_safe(std::string text) {
  for (auto& c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') c = '_';
  }
  return text;
}

void add_common(CLI::App* sub, CommonOptions& c, bool with_remote) {
  sub->add_option("--data", c.data, "Load CSV path, or synth:SEED:DAYS[:BUILDINGS]")->required();
  sub->add_option("--template", c.pattern, "Sentence template with {Time} and {Usage}")->capture_default_str();
  sub->add_option("--decimals", c.decimals, "Usage rounding precision")->capture_default_str()->check(CLI::Range(0, kMaxDecimals));
  sub->add_option("--n", c.n, "Observation length (hours)")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--split", c.split, "TRAIN,VAL,TEST calendar months, or auto")->capture_default_str();
  sub->add_option("--max-gap", c.max_gap, "Longest gap (hours) repaired by interpolation")->capture_default_str()->check(CLI::NonNegativeNumber);
  if (!with_remote) return;
  sub->add_option("--m", c.m, "Forecast horizon (hours)")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--stride", c.stride, "Test window stride (hours)")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--context-mode", c.context_mode, "sliding | growing")->capture_default_str()->check(CLI::IsMember({"sliding", "growing"}));
  sub->add_option("--retry-limit", c.retry_limit, "Backend re-asks per step on unusable output")->capture_default_str()->check(CLI::NonNegativeNumber);
  sub->add_option("--timeout-ms", c.timeout_ms, "Remote request timeout")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--retries", c.retries, "Remote attempts per request")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--max-new-tokens", c.max_new_tokens, "Remote generation budget")->capture_default_str()->check(CLI::PositiveNumber);
}

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Usage: return kUsage;
    case ErrorCategory::Backend: return kBackendError;
    case ErrorCategory::Data: return kDataError;
  }
  return kDataError;
}

// ---- commands ---------------------------------------------------------------

int cmd_synth(const SynthOptions& s, const std::string& out_path, std::ostream& out) {
  const auto series = synth_buildings(s);
  std::ostringstream csv;
  write_csv(csv, series);
  write_file(out_path, csv.str());
  out << "wrote " << series.size() << " buildings x " << series.front().size() << " hourly rows to " << out_path << '\n';
  return kOk;
}

int cmd_export(const CommonOptions& c, const std::string& building, const std::string& out_path,
               const std::string& eval_out, std::ostream& out) {
  const auto data = load_dataset(c);
  const auto tmpl = make_template(c);
  const auto split = split_by_months(find_building(data, building), parse_split(c.split));
  std::ostringstream pairs;
  const auto count = export_pairs(split.train, tmpl, static_cast<std::size_t>(c.n), pairs);
  write_file(out_path, pairs.str());
  out << count << " pairs written to " << out_path << '\n';
  if (!eval_out.empty()) {
    std::ostringstream windows;
    const auto w = export_eval_windows(split.test, tmpl, static_cast<std::size_t>(c.n), static_cast<std::size_t>(c.m),
                                       c.stride, windows);
    write_file(eval_out, windows.str());
    out << w << " evaluation windows written to " << eval_out << '\n';
  }
  return kOk;
}

void emit_report(const EvalReport& report, const std::string& csv_path, std::ostream& out) {
  out << render_report(report, ReportFormat::TextTable);
  if (!csv_path.empty()) write_file(csv_path, render_report(report, ReportFormat::Csv));
}

int cmd_evaluate(const CommonOptions& c, const std::vector<std::string>& buildings, const std::string& backend_spec,
                 const std::string& model_name, const std::string& report_path, const std::string& audit_path,
                 std::ostream& out) {
  const auto data = load_dataset(c);
  const auto splits = split_all(data, c);
  const auto tmpl = make_template(c);
  const BackendFactory factory{c, tmpl};

  EvalOptions options;
  options.rollout = make_rollout(c);
  options.stride = c.stride;
  options.model = model_name.empty() ? backend_spec : model_name;

  std::ostringstream audit;
  if (!audit_path.empty()) {
    options.on_forecast = [&audit](const ForecastResult& r) { audit << to_json(r) << '\n'; };
  }

  EvalReport report;
  report.metadata = describe(options, tmpl);
  for (const auto& id : select_buildings(data, buildings)) {
    const auto& split = splits.at(id);
    const auto backend = factory.make(backend_spec, split, data.at(id));
    report.rows.push_back(evaluate_building(split, *backend, tmpl, options));
  }
  emit_report(report, report_path, out);
  if (!audit_path.empty()) write_file(audit_path, audit.str());
  return kOk;
}

int cmd_zeroshot(const CommonOptions& c, const std::string& manifest_path, const std::string& report_path,
                 std::ostream& out) {
  const auto data = load_dataset(c);
  const auto splits = split_all(data, c);
  const auto tmpl = make_template(c);
  const BackendFactory factory{c, tmpl};

  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest '" + manifest_path + "'");
  const auto doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::MalformedRow, "manifest is not valid JSON");
  const json& list = doc.is_object() && doc.contains("models") ? doc["models"] : doc;
  if (!list.is_array()) throw Error(ErrorCode::MalformedRow, "manifest must be an array of {model, source, backend}");

  std::vector<ZeroShotEntry> entries;
  for (const auto& item : list) {
    if (!item.is_object() || !item.contains("model") || !item.contains("source") || !item.contains("backend")) {
      throw Error(ErrorCode::MalformedRow, "manifest entry needs model, source and backend: " + item.dump());
    }
    ZeroShotEntry e;
    e.model = item["model"].get<std::string>();
    e.source_building = item["source"].get<std::string>();
    const auto spec = item["backend"].get<std::string>();
    const auto source_it = splits.find(e.source_building);
    // Built lazily per target so that a broken cell does not stop the run.
    e.backend = [&, spec, source_it](const std::string& target) -> std::shared_ptr<SentenceBackend> {
      if (source_it == splits.end()) {
        throw Error(ErrorCode::InvalidArgument, "source building not in data");
      }
      return factory.make(spec, source_it->second, data.at(target));
    };
    entries.push_back(std::move(e));
  }

  EvalOptions options;
  options.rollout = make_rollout(c);
  options.stride = c.stride;
  const auto report = zeroshot_matrix(splits, entries, tmpl, options);
  emit_report(report, report_path, out);
  return kOk;
}

int cmd_sweep(const CommonOptions& c, const std::vector<std::string>& buildings, const std::string& backend_spec,
              const std::string& model_name, const std::string& horizons_text, const std::string& report_path,
              const std::string& plot_dir, std::ostream& out) {
  const auto horizons = parse_horizons(horizons_text);
  const auto data = load_dataset(c);
  const auto splits = split_all(data, c);
  const auto tmpl = make_template(c);
  const BackendFactory factory{c, tmpl};

  EvalOptions options;
  options.rollout = make_rollout(c);
  options.stride = c.stride;
  options.model = model_name.empty() ? backend_spec : model_name;

  EvalReport report;
  report.metadata = describe(options, tmpl);
  for (const auto& id : select_buildings(data, buildings)) {
    const auto& split = splits.at(id);
    const auto backend = factory.make(backend_spec, split, data.at(id));
    const auto building_report = horizon_sweep(split, *backend, tmpl, options, horizons);
    if (!plot_dir.empty()) {
      write_file((fs::path(plot_dir) / (file_safe(options.model) + "_" + file_safe(id) + ".csv")).string(),
                 render_plot_csv(building_report.rows));
    }
    report.rows.insert(report.rows.end(), building_report.rows.begin(), building_report.rows.end());
  }
  emit_report(report, report_path, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-load forecasting through sentence-generation backends", "loadlm"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; command-line flags take precedence");

  // synth
  SynthOptions synth;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Generate synthetic hourly load CSV");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--days", synth.days, "Days per building")->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--buildings", synth.buildings, "Number of buildings")->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--out", synth_out, "Output CSV path")->required();
  synth_cmd->add_option("--resolution", synth.resolution, "Meter resolution in decimals")->capture_default_str()->check(CLI::Range(0, kMaxDecimals));
  synth_cmd->add_option("--base-load", synth.base_load, "Override base load (kWh)");
  synth_cmd->add_option("--daily-amplitude", synth.daily_amplitude, "Override daily amplitude (kWh)");
  synth_cmd->add_option("--weekly-amplitude", synth.weekly_amplitude, "Override weekly amplitude (kWh)");
  synth_cmd->add_option("--noise-sd", synth.noise_sd, "Override noise standard deviation (kWh)");

  // export-finetune
  CommonOptions export_common;
  std::string export_building, export_out, export_eval_out;
  auto* export_cmd = app.add_subcommand("export-finetune", "Write next-sentence fine-tuning pairs as JSONL");
  add_common(export_cmd, export_common, false);
  export_cmd->add_option("--building", export_building, "Building id")->required();
  export_cmd->add_option("--out", export_out, "Pairs JSONL path")->required();
  export_cmd->add_option("--eval-out", export_eval_out, "Also write test-split evaluation windows here");
  export_cmd->add_option("--m", export_common.m, "Horizon for --eval-out")->capture_default_str()->check(CLI::PositiveNumber);
  export_cmd->add_option("--stride", export_common.stride, "Stride for --eval-out")->capture_default_str()->check(CLI::PositiveNumber);

  // evaluate
  CommonOptions eval_common;
  std::vector<std::string> eval_buildings;
  std::string eval_backend, eval_model, eval_report, eval_audit;
  auto* eval_cmd = app.add_subcommand("evaluate", "Per-building RMSE/MAE on the test split");
  add_common(eval_cmd, eval_common, true);
  eval_cmd->add_option("--building", eval_buildings, "Building id(s); all when omitted");
  eval_cmd->add_option("--backend", eval_backend,
                       "oracle | persistence | seasonal:PERIOD | linear-ar:P:LAMBDA | remote:URL | scripted:FILE")
      ->required();
  eval_cmd->add_option("--model-name", eval_model, "Row label (defaults to the backend spec)");
  eval_cmd->add_option("--report", eval_report, "CSV report path");
  eval_cmd->add_option("--audit", eval_audit, "JSONL of every forecast (predictions, transcript, faults)");

  // zeroshot
  CommonOptions zs_common;
  std::string zs_manifest, zs_report;
  auto* zs_cmd = app.add_subcommand("zeroshot", "Cross-building matrix of fine-tuned models");
  add_common(zs_cmd, zs_common, true);
  zs_cmd->add_option("--backends", zs_manifest, "JSON manifest [{model, source, backend}]")->required();
  zs_cmd->add_option("--report", zs_report, "CSV report path");

  // sweep
  CommonOptions sweep_common;
  std::vector<std::string> sweep_buildings;
  std::string sweep_backend, sweep_model, sweep_horizons = "1,4,12,24", sweep_report, sweep_plot;
  auto* sweep_cmd = app.add_subcommand("sweep", "Errors for several horizons from one rollout per window");
  add_common(sweep_cmd, sweep_common, true);
  sweep_cmd->add_option("--building", sweep_buildings, "Building id(s); all when omitted");
  sweep_cmd->add_option("--backend", sweep_backend, "Backend spec as for evaluate")->required();
  sweep_cmd->add_option("--model-name", sweep_model, "Row label (defaults to the backend spec)");
  sweep_cmd->add_option("--horizons", sweep_horizons, "Comma-separated horizons")->capture_default_str();
  sweep_cmd->add_option("--report", sweep_report, "CSV report path");
  sweep_cmd->add_option("--plot-csv", sweep_plot, "Directory for horizon,rmse,mae files per building");

  for (auto* sub : {synth_cmd, export_cmd, eval_cmd, zs_cmd, sweep_cmd}) sub->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth, synth_out, out);
    if (export_cmd->parsed()) return cmd_export(export_common, export_building, export_out, export_eval_out, out);
    if (eval_cmd->parsed()) {
      return cmd_evaluate(eval_common, eval_buildings, eval_backend, eval_model, eval_report, eval_audit, out);
    }
    if (zs_cmd->parsed()) return cmd_zeroshot(zs_common, zs_manifest, zs_report, out);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_common, sweep_buildings, sweep_backend, sweep_model, sweep_horizons, sweep_report,
                       sweep_plot, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace loadlm::cli
