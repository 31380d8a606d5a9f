#include <sstream>

#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "loadlm/backend.hpp"
#include "loadlm/evaluation.hpp"
#include "loadlm/report.hpp"
#include "loadlm/synth.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace loadlm {
namespace {

const PromptTemplate kTmpl;

LoadSeries periodic(const std::string& id, double base) {
  SynthConfig cfg;
  cfg.base_load = base;
  cfg.noise_sd = 0;
  cfg.weekly_amplitude = 0;
  cfg.resolution_decimals = 1;
  return synth_generate(cfg, id);
}

LoadSeries noisy(const std::string& id, std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.resolution_decimals = 1;
  return synth_generate(cfg, id);
}

DatasetSplit split_of(const LoadSeries& s) { return split_by_months(s, MonthSplit{1, 1, 1}); }

TEST(EvaluateBuilding, OracleIsExact) {
  const auto s = noisy("A", 1);
  OracleBackend oracle(s, kTmpl);
  const auto row = evaluate_building(split_of(s), oracle, kTmpl, EvalOptions{});
  EXPECT_EQ(row.rmse, 0.0);
  EXPECT_EQ(row.mae, 0.0);
  EXPECT_EQ(row.faults, 0U);
  EXPECT_EQ(row.windows, 29U);
  EXPECT_EQ(row.model, "oracle");
  EXPECT_EQ(row.source_building, "A");
  EXPECT_EQ(row.horizon, 24);
}

TEST(EvaluateBuilding, SeasonalOnPeriodicDataIsExact) {
  const auto s = periodic("A", 100);
  SeasonalNaiveBackend seasonal(kTmpl);
  EXPECT_EQ(evaluate_building(split_of(s), seasonal, kTmpl, EvalOptions{}).rmse, 0.0);
}

TEST(EvaluateBuilding, PersistenceMatchesNumericPooledError) {
  const auto s = noisy("B", 4);
  const auto split = split_of(s);
  PersistenceBackend persistence(kTmpl);
  const auto row = evaluate_building(split, persistence, kTmpl, EvalOptions{});

  std::vector<double> pred, truth;
  for (const auto& w : make_windows(split.test, 30, 24, 24)) {
    std::vector<double> obs;
    for (const auto& r : w.observation) obs.push_back(r.consumption);
    for (const double p : oracle::persistence_forecast(obs, 24)) pred.push_back(p);
    for (const auto& r : w.target) truth.push_back(r.consumption);
  }
  EXPECT_NEAR(row.rmse, oracle::brute_rmse(pred, truth), 1e-12 * row.rmse);
  EXPECT_NEAR(row.mae, oracle::brute_mae(pred, truth), 1e-12 * row.mae);
}

TEST(EvaluateBuilding, ForwardsEveryForecast) {
  const auto s = noisy("A", 1);
  PersistenceBackend persistence(kTmpl);
  EvalOptions options;
  std::size_t seen = 0;
  options.on_forecast = [&seen](const ForecastResult& r) {
    EXPECT_EQ(r.predictions.size(), 24U);
    ++seen;
  };
  (void)evaluate_building(split_of(s), persistence, kTmpl, options);
  EXPECT_EQ(seen, 29U);
}

TEST(EvaluateBuilding, NoWindows) {
  const auto s = noisy("A", 1);
  PersistenceBackend persistence(kTmpl);
  EvalOptions options;
  options.rollout.n = 800;
  EXPECT_LOADLM_ERROR(evaluate_building(split_of(s), persistence, kTmpl, options), ErrorCode::NoWindows);
}

TEST(HorizonSweep, LinearSeriesPersistenceError) {
  const double slope = 0.5;
  const auto s = testing::linear_series("A", 100.0, slope, 2160);
  PersistenceBackend persistence(kTmpl);
  const auto report = horizon_sweep(split_of(s), persistence, kTmpl, EvalOptions{});
  ASSERT_EQ(report.rows.size(), 4U);
  for (const auto& row : report.rows) {
    EXPECT_NEAR(row.mae, slope * (row.horizon + 1) / 2.0, 1e-9) << row.horizon;
    EXPECT_EQ(row.faults, 0U);
  }
}

TEST(HorizonSweep, OracleAndSeasonalAreExactAtEveryHorizon) {
  const auto s = periodic("A", 120);
  OracleBackend oracle(s, kTmpl);
  SeasonalNaiveBackend seasonal(kTmpl);
  for (SentenceBackend* backend : std::initializer_list<SentenceBackend*>{&oracle, &seasonal}) {
    const auto report = horizon_sweep(split_of(s), *backend, kTmpl, EvalOptions{});
    ASSERT_EQ(report.rows.size(), 4U);
    for (const auto& row : report.rows) EXPECT_EQ(row.rmse, 0.0);
  }
  const auto single = horizon_sweep(split_of(s), oracle, kTmpl, EvalOptions{}, {24});
  EXPECT_EQ(single.rows.size(), 1U);
  EXPECT_LOADLM_ERROR(horizon_sweep(split_of(s), oracle, kTmpl, EvalOptions{}, {0, 4}), ErrorCode::InvalidArgument);
}

std::map<std::string, DatasetSplit> buildings(int count) {
  std::map<std::string, DatasetSplit> out;
  for (int i = 0; i < count; ++i) {
    const std::string id(1, static_cast<char>('A' + i));
    out.emplace(id, split_of(noisy(id, static_cast<std::uint64_t>(i))));
  }
  return out;
}

ZeroShotEntry oracle_entry(const std::map<std::string, DatasetSplit>& splits, const std::string& model,
                           const std::string& source) {
  return {model, source, [&splits](const std::string& target) -> std::shared_ptr<SentenceBackend> {
            const auto& s = splits.at(target);
            return std::make_shared<OracleBackend>(s.test, kTmpl);
          }};
}

TEST(ZeroShot, OffDiagonalMatrix) {
  const auto splits = buildings(6);
  std::vector<ZeroShotEntry> entries;
  for (const auto& model : {"m1", "m2", "m3"}) {
    for (const auto& [source, _] : splits) entries.push_back(oracle_entry(splits, model, source));
  }
  const auto report = zeroshot_matrix(splits, entries, kTmpl, EvalOptions{});
  EXPECT_EQ(report.rows.size(), 90U);
  for (const auto& row : report.rows) {
    EXPECT_NE(row.source_building, row.target_building);
    EXPECT_EQ(row.rmse, 0.0);
    EXPECT_FALSE(row.error);
  }
}

TEST(ZeroShot, SmallestMatrixAndFailingCells) {
  const auto splits = buildings(2);
  std::vector<ZeroShotEntry> entries = {oracle_entry(splits, "m", "A")};
  entries.push_back({"m", "B", [](const std::string&) -> std::shared_ptr<SentenceBackend> {
                       return std::make_shared<ScriptedBackend>(std::vector<Sentence>{});
                     }});
  const auto report = zeroshot_matrix(splits, entries, kTmpl, EvalOptions{});
  ASSERT_EQ(report.rows.size(), 2U);
  EXPECT_FALSE(report.rows[0].error);
  ASSERT_TRUE(report.rows[1].error);
  EXPECT_NE(report.rows[1].error->find("ScriptExhausted"), std::string::npos);

  const auto csv = render_report(report, ReportFormat::Csv);
  EXPECT_NE(csv.find("m,B,A,24,error,error"), std::string::npos);
  EXPECT_LOADLM_ERROR(zeroshot_matrix(buildings(1), entries, kTmpl, EvalOptions{}), ErrorCode::InvalidArgument);
}

EvalRow row(std::string model, std::string source, std::string target, double rmse, double mae) {
  EvalRow r;
  r.model = std::move(model);
  r.source_building = std::move(source);
  r.target_building = std::move(target);
  r.horizon = 24;
  r.rmse = rmse;
  r.mae = mae;
  r.windows = 29;
  return r;
}

TEST(Report, SingleRowCsv) {
  EvalReport report;
  report.rows.push_back(row("seq2seq", "Building A", "Building A", 20.419, 15.124));
  EXPECT_EQ(render_report(report, ReportFormat::Csv),
            std::string(kReportCsvHeader) + "\nseq2seq,Building A,Building A,24,20.419,15.124,29,0\n");
  const auto text = render_report(report, ReportFormat::TextTable);
  EXPECT_NE(text.find("20.419"), std::string::npos);
  EXPECT_NE(text.find("15.124"), std::string::npos);
  EXPECT_LOADLM_ERROR(render_report(EvalReport{}, ReportFormat::Csv), ErrorCode::EmptyReport);
}

TEST(Report, CsvRoundTrip) {
  EvalReport report;
  report.rows = {row("b", "B", "A", 1.25, 0.5), row("a", "A", "B", 3.0, 2.125)};
  std::istringstream in(render_report(report, ReportFormat::Csv));
  const auto back = read_report_csv(in);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].model, "a");
  EXPECT_EQ(back[0].rmse, 3.0);
  EXPECT_EQ(back[0].mae, 2.125);
  EXPECT_EQ(back[1].rmse, 1.25);
}

TEST(Report, TextGroupsBySourceBuilding) {
  EvalReport report;
  for (const char source : std::string("ABCDEF")) {
    for (const char target : std::string("ABCDEF")) {
      if (source == target) continue;
      for (const auto* model : {"x", "y", "z"}) {
        report.rows.push_back(row(model, std::string(1, source), std::string(1, target), 1, 1));
      }
    }
  }
  report.metadata = {{"aggregation", "pooled"}};
  const auto text = render_report(report, ReportFormat::TextTable);
  EXPECT_EQ(text.rfind("# aggregation=pooled\n", 0), 0U);
  // One block per source building.
  std::size_t blanks = 0;
  for (std::size_t pos = text.find("\n\n"); pos != std::string::npos; pos = text.find("\n\n", pos + 1)) ++blanks;
  EXPECT_EQ(blanks, 5U);
}

TEST(Report, PlotCsv) {
  std::vector<EvalRow> rows = {row("p", "A", "A", 2, 1), row("p", "A", "A", 4, 3)};
  rows[0].horizon = 12;
  rows[1].horizon = 1;
  EXPECT_EQ(render_plot_csv(rows), "horizon,rmse,mae\n1,4.000,3.000\n12,2.000,1.000\n");
}

}  // namespace
}  // namespace loadlm
