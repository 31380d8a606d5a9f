#include "loadlm/linear_ar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "loadlm/error.hpp"

namespace loadlm {

LinearArModel LinearArModel::fit(std::span<const double> series, int order, double lambda) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "AR order must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "ridge lambda must be >= 0");
  const auto p = static_cast<std::size_t>(order);
  if (series.size() <= p) {
    throw Error(ErrorCode::SeriesTooShort, "AR(" + std::to_string(order) + ") needs more than " +
                                               std::to_string(order) + " values, got " +
                                               std::to_string(series.size()));
  }

  // Accumulate X'X and X'y row by row; row t holds x_{t-1}, ..., x_{t-p}.
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(order, order);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd row(order);
  for (std::size_t t = p; t < series.size(); ++t) {
    for (std::size_t j = 0; j < p; ++j) row(static_cast<Eigen::Index>(j)) = series[t - 1 - j];
    gram.noalias() += row * row.transpose();
    rhs.noalias() += row * series[t];
  }
  gram.diagonal().array() += lambda;
  if (!gram.allFinite() || !rhs.allFinite()) {
    throw Error(ErrorCode::SingularSystem, "normal equations contain non-finite entries");
  }

  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(gram);
  if (cod.rank() == 0) {
    throw Error(ErrorCode::SingularSystem, "normal equations have rank 0 (lambda = 0 on degenerate data)");
  }
  Eigen::VectorXd w = cod.solve(rhs);
  // One step of iterative refinement against the normal equations.
  const Eigen::VectorXd correction = cod.solve(rhs - gram * w);
  w += correction;
  if (!w.allFinite()) throw Error(ErrorCode::SingularSystem, "normal equations solve produced non-finite weights");

  return LinearArModel(std::vector<double>(w.data(), w.data() + w.size()), lambda);
}

LinearArModel::LinearArModel(std::vector<double> weights, double lambda)
    : weights_(std::move(weights)), lambda_(lambda) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidArgument, "AR model needs at least one weight");
}

double LinearArModel::predict_raw(std::span<const double> recent) const {
  if (recent.size() < weights_.size()) {
    throw Error(ErrorCode::ContextTooShort, "AR(" + std::to_string(order()) + ") needs " +
                                                std::to_string(order()) + " values, got " +
                                                std::to_string(recent.size()));
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) acc += weights_[j] * recent[recent.size() - 1 - j];
  return acc;
}

double LinearArModel::predict(std::span<const double> recent) const {
  return std::max(predict_raw(recent), 0.0);
}

std::vector<double> LinearArModel::residuals(std::span<const double> series) const {
  std::vector<double> out;
  const auto p = weights_.size();
  if (series.size() <= p) return out;
  out.reserve(series.size() - p);
  for (std::size_t t = p; t < series.size(); ++t) out.push_back(series[t] - predict_raw(series.subspan(0, t)));
  return out;
}

}  // namespace loadlm
