#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cleanroom/dataset.hpp"

namespace cleanroom {

struct GbdtConfig {
  int n_rounds = 100;
  double learning_rate = 0.1;
  int max_depth = 6;
  int min_samples_leaf = 5;
  double subsample = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Gradient-boosted trees for binary log-loss. The model starts from the
/// log-odds of the base rate; each round fits a least-squares regression
/// tree to the current residuals (y - p) and takes a Newton step per leaf
/// (sum of residuals over sum of p(1-p)), shrunk by the learning rate.
class GbdtModel {
 public:
  struct RegNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
  };

  GbdtConfig config;
  double init_score = 0.0;
  std::vector<std::vector<RegNode>> trees;
  Eigen::Index n_features = 0;

  /// Raw additive score (logit scale).
  Eigen::VectorXd decision_function(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& features) const;
};

GbdtModel train_gbdt(const Dataset& data, const GbdtConfig& config);

}  // namespace cleanroom
