#pragma once

#include <Eigen/Dense>

#include "cleanroom/dataset.hpp"

namespace cleanroom {

struct LinearConfig {
  int iterations = 500;
  double step_size = 0.5;
};

/// Logistic classifier fit by full-batch gradient descent with a fixed
/// iteration budget and step size. Features are standardized internally for
/// step-size stability; the fitted stats ship with the model.
class LinearModel {
 public:
  LinearConfig config;
  Eigen::VectorXd weights;
  double bias = 0.0;
  StandardizationStats stats;
  Eigen::Index n_features = 0;

  Eigen::VectorXd decision_function(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& features) const;
};

LinearModel train_linear(const Dataset& data, const LinearConfig& config = {});

}  // namespace cleanroom
