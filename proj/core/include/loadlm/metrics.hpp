#pragma once

#include <cstddef>
#include <span>

namespace loadlm {

/// sqrt(mean((pred - truth)^2)). Errors: EmptyInput, LengthMismatch, InvalidArgument (non-finite).
[[nodiscard]] double rmse(std::span<const double> pred, std::span<const double> truth);

/// mean(|pred - truth|). Same errors as `rmse`.
[[nodiscard]] double mae(std::span<const double> pred, std::span<const double> truth);

/// Pooled residual sums. Merging is associative, so per-window partials can
/// be combined in any order.
class ErrorAccumulator {
 public:
  void add(std::span<const double> pred, std::span<const double> truth);
  void merge(const ErrorAccumulator& other) noexcept;

  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  [[nodiscard]] double rmse() const;
  [[nodiscard]] double mae() const;

 private:
  double sum_sq_ = 0.0;
  double sum_abs_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace loadlm
