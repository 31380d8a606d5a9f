#include "loadlm/metrics.hpp"

#include <cmath>
#include <string>

#include "loadlm/error.hpp"

namespace loadlm {

namespace {

void check_inputs(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(pred.size()) + " predictions vs " + std::to_string(truth.size()) + " targets");
  }
  if (pred.empty()) throw Error(ErrorCode::EmptyInput, "metric over zero values");
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!std::isfinite(pred[i]) || !std::isfinite(truth[i])) {
      throw Error(ErrorCode::InvalidArgument, "non-finite value at index " + std::to_string(i));
    }
  }
}

}  // namespace

double rmse(std::span<const double> pred, std::span<const double> truth) {
  ErrorAccumulator acc;
  acc.add(pred, truth);
  return acc.rmse();
}

double mae(std::span<const double> pred, std::span<const double> truth) {
  ErrorAccumulator acc;
  acc.add(pred, truth);
  return acc.mae();
}

void ErrorAccumulator::add(std::span<const double> pred, std::span<const double> truth) {
  check_inputs(pred, truth);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - truth[i];
    sum_sq_ += e * e;
    sum_abs_ += std::fabs(e);
  }
  count_ += pred.size();
}

void ErrorAccumulator::merge(const ErrorAccumulator& other) noexcept {
  sum_sq_ += other.sum_sq_;
  sum_abs_ += other.sum_abs_;
  count_ += other.count_;
}

double ErrorAccumulator::rmse() const {
  if (count_ == 0) throw Error(ErrorCode::EmptyInput, "no residuals accumulated");
  return std::sqrt(sum_sq_ / static_cast<double>(count_));
}

double ErrorAccumulator::mae() const {
  if (count_ == 0) throw Error(ErrorCode::EmptyInput, "no residuals accumulated");
  return sum_abs_ / static_cast<double>(count_);
}

}  // namespace loadlm
