#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "expect_error.hpp"
#include "loadlm/finetune_export.hpp"
#include "test_support.hpp"

namespace loadlm {
namespace {

const PromptTemplate kTmpl;

LoadSeries ramp(std::size_t length) { return testing::linear_series("A", 10.0, 0.5, length); }

TEST(ExportPairs, CountIsLengthMinusN) {
  for (const auto& [length, expected] : {std::pair{31U, 1U}, std::pair{100U, 70U}}) {
    std::ostringstream out;
    EXPECT_EQ(export_pairs(ramp(length), kTmpl, 30, out), expected);
    std::istringstream in(out.str());
    EXPECT_EQ(read_pairs(in).size(), expected);
  }
}

TEST(ExportPairs, TooShort) {
  std::ostringstream out;
  EXPECT_LOADLM_ERROR(export_pairs(ramp(30), kTmpl, 30, out), ErrorCode::SeriesTooShort);
  EXPECT_LOADLM_ERROR(export_pairs(ramp(30), kTmpl, 0, out), ErrorCode::InvalidArgument);
}

TEST(ExportPairs, PairsSlideByOneHour) {
  const auto s = ramp(35);
  std::stringstream buf;
  (void)export_pairs(s, kTmpl, 3, buf);
  const auto pairs = read_pairs(buf);
  ASSERT_EQ(pairs.size(), 32U);
  const auto sentences = render_context(kTmpl, s.records());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(pairs[i].input, sentences[i].text() + "\n" + sentences[i + 1].text() + "\n" + sentences[i + 2].text());
    EXPECT_EQ(pairs[i].target, sentences[i + 3].text());
  }
}

TEST(ExportPairs, EachLineIsAJsonObject) {
  std::ostringstream out;
  (void)export_pairs(ramp(40), kTmpl, 30, out);
  std::istringstream lines(out.str());
  std::string line;
  while (std::getline(lines, line)) {
    const auto doc = nlohmann::json::parse(line);
    EXPECT_TRUE(doc.at("input").is_string());
    EXPECT_TRUE(doc.at("target").is_string());
  }
}

TEST(ExportEvalWindows, DecemberSizedMonth) {
  const auto month = testing::hourly_series("A", *make_timestamp(2019, 12, 1, 0), std::vector<double>(744, 2.0));
  std::stringstream buf;
  EXPECT_EQ(export_eval_windows(month, kTmpl, 30, 24, 24, buf), 29U);
  const auto windows = read_eval_windows(buf);
  ASSERT_EQ(windows.size(), 29U);
  EXPECT_EQ(windows[0].observation.size(), 30U);
  EXPECT_EQ(windows[0].targets.size(), 24U);
  EXPECT_EQ(windows[0].start, "2019-12-02 06:00");
  EXPECT_EQ(windows[1].start, "2019-12-03 06:00");

  std::ostringstream all;
  EXPECT_EQ(export_eval_windows(month, kTmpl, 30, 24, 1, all), 691U);
  std::ostringstream sink;
  EXPECT_LOADLM_ERROR(export_eval_windows(month, kTmpl, 30, 0, 1, sink), ErrorCode::InvalidArgument);
}

TEST(ReadBack, RejectsMalformedLines) {
  std::istringstream bad("{\"input\": \"x\"}\n");
  EXPECT_LOADLM_ERROR(read_pairs(bad), ErrorCode::MalformedRow);
  std::istringstream junk("not json\n");
  EXPECT_LOADLM_ERROR(read_eval_windows(junk), ErrorCode::MalformedRow);
}

}  // namespace
}  // namespace loadlm
