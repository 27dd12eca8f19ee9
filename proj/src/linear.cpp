#include "cleanroom/linear.hpp"

#include <cmath>

namespace cleanroom {

Eigen::VectorXd LinearModel::decision_function(
    const Eigen::MatrixXd& features) const {
  if (features.cols() != n_features) {
    throw DataError("linear: trained on " + std::to_string(n_features) +
                    " features, given " + std::to_string(features.cols()));
  }
  const Eigen::MatrixXd scaled =
      (features.rowwise() - stats.mean.transpose()).array().rowwise() /
      stats.stddev.transpose().array();
  return (scaled * weights).array() + bias;
}

Eigen::VectorXd LinearModel::predict_proba(
    const Eigen::MatrixXd& features) const {
  return decision_function(features).unaryExpr(
      [](double z) { return 1.0 / (1.0 + std::exp(-z)); });
}

LinearModel train_linear(const Dataset& data, const LinearConfig& config) {
  const Eigen::Index n = data.n_rows();
  const Eigen::Index positives = data.labels.sum();
  if (n == 0 || positives == 0 || positives == n) {
    throw DataError("linear: training data must contain both classes");
  }
  LinearModel model;
  model.config = config;
  model.n_features = data.n_cols();

  auto [scaled, stats] = standardize(data);
  model.stats = std::move(stats);
  model.weights = Eigen::VectorXd::Zero(data.n_cols());
  model.bias = 0.0;

  const Eigen::VectorXd y = data.labels.cast<double>();
  for (int it = 0; it < config.iterations; ++it) {
    const Eigen::VectorXd z =
        ((scaled.features * model.weights).array() + model.bias).matrix();
    const Eigen::VectorXd p =
        z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    const Eigen::VectorXd err = (p - y) / double(n);
    model.weights -= config.step_size * (scaled.features.transpose() * err);
    model.bias -= config.step_size * err.sum();
  }
  return model;
}

}  // namespace cleanroom
