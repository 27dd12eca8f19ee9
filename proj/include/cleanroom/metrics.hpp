#pragma once

#include <Eigen/Dense>

#include "cleanroom/classifier.hpp"
#include "cleanroom/dataset.hpp"

namespace cleanroom {

struct LossResult {
  double mean = 0.0;
  Eigen::VectorXd per_row;
};

/// Mean binary log-loss in nats, probabilities clipped to
/// [1e-12, 1 - 1e-12] so the result is always finite.
LossResult log_loss(const Eigen::VectorXd& probabilities,
                    const Eigen::VectorXi& labels);

LossResult mean_log_loss(const Classifier& model, const Dataset& data);

struct MetricsResult {
  double f1 = 0.0;
  double fpr = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
};

/// Confusion metrics with malicious (label 1) as the positive class.
/// Rows with probability >= threshold predict positive. Undefined ratios
/// follow the zero conventions: precision/recall/F1 are 0 when their
/// denominator is 0, FPR is 0 when there are no negatives.
MetricsResult compute_metrics(const Eigen::VectorXd& probabilities,
                              const Eigen::VectorXi& labels,
                              double threshold = 0.5);

}  // namespace cleanroom
