#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.hpp"
#include "loadlm/csv_io.hpp"
#include "loadlm/report.hpp"
#include "loadlm/rollout.hpp"
#include "test_support.hpp"

namespace loadlm {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "loadlm");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("loadlm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string make_data(const std::vector<std::string>& extra = {}) {
    std::vector<std::string> args = {"synth", "--seed", "7", "--days", "90", "--buildings", "6", "--out", path("d.csv")};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path("d.csv");
  }

  fs::path dir_;
};

TEST_F(Cli, SynthWritesSixBuildingsDeterministically) {
  const auto data = make_data();
  std::ifstream in(data);
  const auto series = ingest_csv(in);
  ASSERT_EQ(series.size(), 6U);
  for (const auto& [id, s] : series) EXPECT_EQ(s.size(), 2160U) << id;

  const auto first = slurp(data);
  make_data();
  EXPECT_EQ(slurp(data), first);
}

TEST_F(Cli, SynthRejectsZeroDays) {
  const auto r = run_cli({"synth", "--days", "0", "--out", path("x.csv")});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, UnknownCommandIsUsageError) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST_F(Cli, ExportFinetuneOnTwentyTwoMonthTrainSplit) {
  // 731 days from 2019-01-01 span 24 calendar months; 22 of them train.
  const auto r = run_cli({"export-finetune", "--data", "synth:1:731:1", "--building", "A", "--split", "22,1,1",
                          "--out", path("pairs.jsonl"), "--eval-out", path("eval.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::size_t train_hours = (365 + 305) * 24;
  EXPECT_NE(r.out.find(std::to_string(train_hours - 30) + " pairs"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("29 evaluation windows"), std::string::npos) << r.out;

  std::ifstream lines(path("pairs.jsonl"));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto doc = nlohmann::json::parse(line);
    EXPECT_TRUE(doc.contains("input") && doc.contains("target"));
    ++count;
  }
  EXPECT_EQ(count, train_hours - 30);
}

TEST_F(Cli, ExportFinetuneListsKnownBuildings) {
  const auto data = make_data();
  const auto r = run_cli({"export-finetune", "--data", data, "--building", "Z", "--out", path("p.jsonl")});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("A, B, C, D, E, F"), std::string::npos) << r.err;
}

TEST_F(Cli, EvaluateOracleShowsZeroAndWritesCsv) {
  const auto data = make_data();
  const auto r = run_cli({"evaluate", "--data", data, "--building", "C", "--backend", "oracle", "--n", "30", "--m",
                          "24", "--stride", "24", "--report", path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.000  0.000"), std::string::npos) << r.out;
  std::ifstream csv(path("r.csv"));
  const auto rows = read_report_csv(csv);
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0].target_building, "C");
  EXPECT_EQ(rows[0].windows, 29U);
}

TEST_F(Cli, EvaluateSeasonalOnPeriodicSynthIsExact) {
  const auto data = make_data({"--noise-sd", "0", "--weekly-amplitude", "0"});
  const auto r = run_cli({"evaluate", "--data", data, "--backend", "seasonal:24", "--report", path("r.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(path("r.csv"));
  const auto rows = read_report_csv(csv);
  ASSERT_EQ(rows.size(), 6U);
  for (const auto& row : rows) EXPECT_EQ(row.rmse, 0.0) << row.target_building;
}

TEST_F(Cli, EvaluateDeadRemoteIsBackendError) {
  const auto data = make_data();
  const auto url = "remote:http://127.0.0.1:" + std::to_string(testing::closed_port());
  const auto r = run_cli({"evaluate", "--data", data, "--building", "A", "--backend", url, "--retries", "1"});
  EXPECT_EQ(r.code, cli::kBackendError);
  EXPECT_NE(r.err.find("TransportError"), std::string::npos) << r.err;
}

TEST_F(Cli, EvaluateRemoteFromEnvironment) {
  const auto data = make_data();
  testing::ProtocolStub stub;
  ::setenv("LM_ENDPOINT", stub.url().c_str(), 1);
  const auto r = run_cli({"evaluate", "--data", data, "--building", "A", "--backend", "remote", "--model-name", "echo",
                          "--stride", "240"});
  ::unsetenv("LM_ENDPOINT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("echo"), std::string::npos);
  EXPECT_GT(stub.generate_calls(), 0);

  const auto missing = run_cli({"evaluate", "--data", data, "--backend", "remote"});
  EXPECT_EQ(missing.code, cli::kUsage);
}

TEST_F(Cli, EvaluateUnknownBackendSpecIsUsageError) {
  const auto data = make_data();
  EXPECT_EQ(run_cli({"evaluate", "--data", data, "--backend", "magic"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"evaluate", "--data", path("missing.csv"), "--backend", "oracle"}).code, cli::kDataError);
}

TEST_F(Cli, EvaluateLinearArFitsOnTrainSplit) {
  const auto data = make_data();
  const auto r = run_cli({"evaluate", "--data", data, "--building", "A", "--backend", "linear-ar:24:0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("linear-ar:24:0.1"), std::string::npos);
}

TEST_F(Cli, ScriptedFaultsAreAuditedAndExitZero) {
  const auto data = make_data();
  std::ifstream in(data);
  const auto series = ingest_csv(in);
  const auto& a = series.at("A");
  // One test window: March 2019, observation at the first 30 hours.
  const auto split = split_by_months(a, MonthSplit{1, 1, 1});
  const PromptTemplate tmpl;
  {
    std::ofstream script(path("script.txt"));
    for (std::size_t k = 0; k < 24; ++k) {
      if (k == 1 || k == 9) {
        script << "no idea\n";
      } else {
        script << render(tmpl, split.test[30 + k]).text() << '\n';
      }
    }
  }
  const auto r = run_cli({"evaluate", "--data", data, "--building", "A", "--backend", "scripted:" + path("script.txt"),
                          "--stride", "1000", "--retry-limit", "0", "--audit", path("audit.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream audit(path("audit.jsonl"));
  std::string line;
  ASSERT_TRUE(std::getline(audit, line));
  const auto result = forecast_from_json(line);
  ASSERT_EQ(result.faults.size(), 2U);
  EXPECT_EQ(result.faults[0].step, 2);
  EXPECT_EQ(result.faults[1].step, 10);
  EXPECT_EQ(result.predictions[1], result.predictions[0]);
  EXPECT_EQ(result.predictions[9], result.predictions[8]);
}

TEST_F(Cli, ZeroShotMatrix) {
  const auto data = make_data();
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto* source : {"A", "B", "C", "D", "E", "F"}) {
    manifest.push_back({{"model", "oracle"}, {"source", source}, {"backend", "oracle"}});
  }
  std::ofstream(path("m.json")) << manifest.dump();
  const auto r = run_cli({"zeroshot", "--data", data, "--backends", path("m.json"), "--report", path("z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(path("z.csv"));
  const auto rows = read_report_csv(csv);
  EXPECT_EQ(rows.size(), 30U);
  for (const auto& row : rows) {
    EXPECT_NE(row.source_building, row.target_building);
    EXPECT_EQ(row.rmse, 0.0);
  }
}

TEST_F(Cli, ZeroShotFailedCellContinues) {
  ASSERT_EQ(run_cli({"synth", "--buildings", "2", "--out", path("two.csv")}).code, 0);
  const nlohmann::json manifest = {{{"model", "m"}, {"source", "A"}, {"backend", "persistence"}},
                                   {{"model", "m"}, {"source", "B"}, {"backend", "scripted:" + path("none.txt")}}};
  std::ofstream(path("m.json")) << manifest.dump();
  const auto r = run_cli({"zeroshot", "--data", path("two.csv"), "--backends", path("m.json"), "--report",
                          path("z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(path("z.csv"));
  EXPECT_NE(csv.find("m,A,B,24,"), std::string::npos);
  EXPECT_NE(csv.find("m,B,A,24,error,error"), std::string::npos) << csv;
}

TEST_F(Cli, SweepRowsAndPlotFiles) {
  const auto data = make_data();
  const auto r = run_cli({"sweep", "--data", data, "--building", "A", "--building", "B", "--backend", "persistence",
                          "--horizons", "1,4,12,24", "--report", path("s.csv"), "--plot-csv", path("plots")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(path("s.csv"));
  EXPECT_EQ(read_report_csv(csv).size(), 8U);
  const auto plot = slurp(path("plots/persistence_A.csv"));
  EXPECT_EQ(plot.rfind("horizon,rmse,mae\n1,", 0), 0U) << plot;

  const auto one = run_cli({"sweep", "--data", data, "--building", "A", "--backend", "oracle", "--horizons", "24",
                            "--report", path("one.csv")});
  ASSERT_EQ(one.code, 0);
  std::ifstream one_csv(path("one.csv"));
  EXPECT_EQ(read_report_csv(one_csv).size(), 1U);

  EXPECT_EQ(run_cli({"sweep", "--data", data, "--backend", "oracle", "--horizons", "1,x"}).code, cli::kUsage);
}

TEST_F(Cli, ConfigFileFillsOptionsAndFlagsWin) {
  const auto data = make_data();
  std::ofstream(path("cfg.json")) << R"({"evaluate": {"backend": "oracle", "building": ["B"], "n": 24}})";
  const auto from_config = run_cli({"--config", path("cfg.json"), "evaluate", "--data", data});
  ASSERT_EQ(from_config.code, 0) << from_config.err;
  EXPECT_NE(from_config.out.find("# n=24"), std::string::npos);
  EXPECT_NE(from_config.out.find("oracle  B"), std::string::npos) << from_config.out;

  const auto flag_wins = run_cli({"--config", path("cfg.json"), "evaluate", "--data", data, "--n", "30"});
  ASSERT_EQ(flag_wins.code, 0);
  EXPECT_NE(flag_wins.out.find("# n=30"), std::string::npos);

  std::ofstream(path("bad.json")) << "[1, 2";
  EXPECT_EQ(run_cli({"--config", path("bad.json"), "evaluate", "--data", data}).code, cli::kUsage);
}

}  // namespace
}  // namespace loadlm
