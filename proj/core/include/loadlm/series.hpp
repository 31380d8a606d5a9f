#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "loadlm/timestamp.hpp"

namespace loadlm {

/// One hourly meter reading.
struct LoadRecord {
  std::string building_id;
  Timestamp timestamp;
  double consumption = 0.0;  // kWh

  friend bool operator==(const LoadRecord&, const LoadRecord&) = default;
};

/// Throws NegativeConsumption / InvalidArgument when the record breaks its invariants.
void validate_record(const LoadRecord& record);

/// Hourly history of a single building.
///
/// Construction enforces a shared building id and strictly increasing
/// timestamps. Hourly continuity is a separate property (`is_hourly()`):
/// freshly ingested series may contain gaps until `repair_gaps` runs.
class LoadSeries {
 public:
  LoadSeries() = default;
  LoadSeries(std::string building_id, std::vector<LoadRecord> records);

  [[nodiscard]] const std::string& building_id() const noexcept { return building_id_; }
  [[nodiscard]] std::span<const LoadRecord> records() const noexcept { return records_; }
  [[nodiscard]] std::size_t size() const noexcept { return records_.size(); }
  [[nodiscard]] bool empty() const noexcept { return records_.empty(); }
  [[nodiscard]] const LoadRecord& operator[](std::size_t i) const { return records_[i]; }
  [[nodiscard]] const LoadRecord& front() const { return records_.front(); }
  [[nodiscard]] const LoadRecord& back() const { return records_.back(); }

  [[nodiscard]] std::vector<double> values() const;
  [[nodiscard]] bool is_hourly() const noexcept;

  /// Records [offset, offset + count) as a new series.
  [[nodiscard]] LoadSeries slice(std::size_t offset, std::size_t count) const;

  friend bool operator==(const LoadSeries&, const LoadSeries&) = default;

 private:
  std::string building_id_;
  std::vector<LoadRecord> records_;
};

/// Throws NotHourly unless consecutive records are exactly one hour apart.
void require_hourly(std::span<const LoadRecord> records, std::string_view what);

struct DatasetSplit {
  LoadSeries train;
  LoadSeries val;
  LoadSeries test;
};

struct MonthSplit {
  int train_months = 22;
  int val_months = 1;
  int test_months = 1;
};

/// (observation, target) pair; target starts one hour after observation ends.
struct WindowPair {
  std::vector<LoadRecord> observation;
  std::vector<LoadRecord> target;
};

inline constexpr int kDefaultMaxGapHours = 3;

/// Fills runs of at most `max_gap_hours` missing hours by linear interpolation.
/// Throws GapTooLarge naming the bracketing timestamps otherwise.
[[nodiscard]] LoadSeries repair_gaps(const LoadSeries& series, int max_gap_hours = kDefaultMaxGapHours);

/// Partitions on calendar-month boundaries. The last `test_months` months
/// present form the test set, the `val_months` before them the validation set,
/// and everything earlier the training set (which must cover at least
/// `train_months` months). Concatenating the parts reproduces the input.
[[nodiscard]] DatasetSplit split_by_months(const LoadSeries& series, MonthSplit months = {});

/// floor((length - n - m) / stride) + 1 when length >= n + m, else 0.
[[nodiscard]] std::size_t window_count(std::size_t length, std::size_t n, std::size_t m,
                                       std::size_t stride) noexcept;

/// Windows starting at offsets 0, stride, 2*stride, ... over an hourly series.
[[nodiscard]] std::vector<WindowPair> make_windows(const LoadSeries& series, std::size_t n, std::size_t m,
                                                   std::size_t stride);

}  // namespace loadlm
