#include "loadlm/series.hpp"

#include <cmath>
#include <iterator>

#include "loadlm/error.hpp"

namespace loadlm {

void validate_record(const LoadRecord& record) {
  if (!std::isfinite(record.consumption)) {
    throw Error(ErrorCode::InvalidArgument,
                "consumption must be finite at " + format_timestamp(record.timestamp));
  }
  if (record.consumption < 0.0) {
    throw Error(ErrorCode::NegativeConsumption,
                "building " + record.building_id + " at " + format_timestamp(record.timestamp));
  }
}

LoadSeries::LoadSeries(std::string building_id, std::vector<LoadRecord> records)
    : building_id_(std::move(building_id)), records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (r.building_id != building_id_) {
      throw Error(ErrorCode::InvalidArgument,
                  "record for building '" + r.building_id + "' in series '" + building_id_ + "'");
    }
    validate_record(r);
    if (i > 0 && !(records_[i - 1].timestamp < r.timestamp)) {
      const auto code = records_[i - 1].timestamp == r.timestamp ? ErrorCode::DuplicateTimestamp
                                                                  : ErrorCode::NotChronological;
      throw Error(code, "building " + building_id_ + " at " + format_timestamp(r.timestamp));
    }
  }
}

std::vector<double> LoadSeries::values() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.consumption);
  return out;
}

bool LoadSeries::is_hourly() const noexcept {
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].timestamp - records_[i - 1].timestamp != kOneHour) return false;
  }
  return true;
}

LoadSeries LoadSeries::slice(std::size_t offset, std::size_t count) const {
  if (offset > records_.size() || count > records_.size() - offset) {
    throw Error(ErrorCode::InvalidArgument, "slice out of range");
  }
  const auto first = records_.begin() + static_cast<std::ptrdiff_t>(offset);
  LoadSeries out;
  out.building_id_ = building_id_;
  out.records_.assign(first, first + static_cast<std::ptrdiff_t>(count));
  return out;
}

void require_hourly(std::span<const LoadRecord> records, std::string_view what) {
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto step = records[i].timestamp - records[i - 1].timestamp;
    if (step <= std::chrono::hours{0}) {
      throw Error(ErrorCode::NotChronological,
                  std::string(what) + " not chronological at " + format_timestamp(records[i].timestamp));
    }
    if (step != kOneHour) {
      throw Error(ErrorCode::NotHourly, std::string(what) + " has a gap between " +
                                            format_timestamp(records[i - 1].timestamp) + " and " +
                                            format_timestamp(records[i].timestamp));
    }
  }
}

LoadSeries repair_gaps(const LoadSeries& series, int max_gap_hours) {
  if (max_gap_hours < 0) throw Error(ErrorCode::InvalidArgument, "max_gap_hours must be >= 0");
  if (series.is_hourly()) return series;

  std::vector<LoadRecord> out;
  out.reserve(series.size());
  const auto records = series.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) {
      const auto& a = records[i - 1];
      const auto& b = records[i];
      const auto span_hours = (b.timestamp - a.timestamp).count();
      const auto missing = span_hours - 1;
      if (missing > max_gap_hours) {
        throw Error(ErrorCode::GapTooLarge,
                    "building " + series.building_id() + ": " + std::to_string(missing) +
                        " missing hours between " + format_timestamp(a.timestamp) + " and " +
                        format_timestamp(b.timestamp) + " (max " + std::to_string(max_gap_hours) + ")");
      }
      for (long long k = 1; k <= missing; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(span_hours);
        out.push_back({series.building_id(), a.timestamp + std::chrono::hours{k},
                       a.consumption + (b.consumption - a.consumption) * frac});
      }
    }
    out.push_back(records[i]);
  }
  return LoadSeries(series.building_id(), std::move(out));
}

DatasetSplit split_by_months(const LoadSeries& series, MonthSplit months) {
  if (months.train_months < 1 || months.val_months < 0 || months.test_months < 1) {
    throw Error(ErrorCode::InvalidArgument, "split needs train >= 1, val >= 0, test >= 1 months");
  }
  // Index of the first record of each distinct calendar month.
  std::vector<std::size_t> month_starts;
  int current = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const int idx = month_index(series[i].timestamp);
    if (i == 0 || idx != current) {
      month_starts.push_back(i);
      current = idx;
    }
  }
  const auto needed =
      static_cast<std::size_t>(months.train_months + months.val_months + months.test_months);
  if (month_starts.size() < needed) {
    throw Error(ErrorCode::InsufficientSpan, "series '" + series.building_id() + "' covers " +
                                                 std::to_string(month_starts.size()) +
                                                 " calendar months, split needs " + std::to_string(needed));
  }
  const std::size_t test_begin = month_starts[month_starts.size() - static_cast<std::size_t>(months.test_months)];
  const std::size_t val_begin = month_starts[month_starts.size() - static_cast<std::size_t>(months.test_months) -
                                            static_cast<std::size_t>(months.val_months)];
  return DatasetSplit{
      series.slice(0, val_begin),
      series.slice(val_begin, test_begin - val_begin),
      series.slice(test_begin, series.size() - test_begin),
  };
}

std::size_t window_count(std::size_t length, std::size_t n, std::size_t m, std::size_t stride) noexcept {
  if (stride == 0 || length < n + m) return 0;
  return (length - n - m) / stride + 1;
}

std::vector<WindowPair> make_windows(const LoadSeries& series, std::size_t n, std::size_t m, std::size_t stride) {
  if (n < 1 || m < 1 || stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "windows need n >= 1, m >= 1, stride >= 1");
  }
  require_hourly(series.records(), "series '" + series.building_id() + "'");
  const auto count = window_count(series.size(), n, m, stride);
  const auto records = series.records();
  std::vector<WindowPair> windows;
  windows.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const auto obs = records.subspan(w * stride, n);
    const auto tgt = records.subspan(w * stride + n, m);
    windows.push_back({{obs.begin(), obs.end()}, {tgt.begin(), tgt.end()}});
  }
  return windows;
}

}  // namespace loadlm
