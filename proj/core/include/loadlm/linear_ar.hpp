#pragma once

#include <span>
#include <vector>

namespace loadlm {

/// Autoregressive linear predictor without intercept,
///   x_t ~ sum_{j=1..p} w_j x_{t-j},
/// fitted by ridge least squares through the normal equations
///   (X'X + lambda I) w = X'y.
///
/// With lambda == 0 and a rank-deficient X'X the minimum-norm solution is
/// used; a system carrying no information at all (rank 0, e.g. an all-zero
/// series) raises SingularSystem.
class LinearArModel {
 public:
  [[nodiscard]] static LinearArModel fit(std::span<const double> series, int order, double lambda);

  LinearArModel(std::vector<double> weights, double lambda);

  [[nodiscard]] int order() const noexcept { return static_cast<int>(weights_.size()); }
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  /// weights()[j] multiplies x_{t-1-j}.
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

  /// Linear prediction from the last `order()` values of `recent` (most recent
  /// last), before clamping.
  [[nodiscard]] double predict_raw(std::span<const double> recent) const;
  /// `predict_raw` clamped at 0.
  [[nodiscard]] double predict(std::span<const double> recent) const;

  /// One-step in-sample residuals x_t - prediction_raw for t = p..L-1.
  [[nodiscard]] std::vector<double> residuals(std::span<const double> series) const;

 private:
  std::vector<double> weights_;
  double lambda_;
};

}  // namespace loadlm
