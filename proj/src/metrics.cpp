#include "cleanroom/metrics.hpp"

#include <cmath>

namespace cleanroom {

namespace {

constexpr double kEps = 1e-12;

}  // namespace

LossResult log_loss(const Eigen::VectorXd& probabilities,
                    const Eigen::VectorXi& labels) {
  if (probabilities.size() != labels.size()) {
    throw DataError("log_loss: probability/label length mismatch");
  }
  if (labels.size() == 0) {
    throw DataError("log_loss: empty input");
  }
  LossResult result;
  result.per_row.resize(labels.size());
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const double p =
        std::min(std::max(probabilities[i], kEps), 1.0 - kEps);
    result.per_row[i] =
        labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
  }
  result.mean = result.per_row.mean();
  return result;
}

LossResult mean_log_loss(const Classifier& model, const Dataset& data) {
  if (data.n_rows() == 0) {
    throw DataError("mean_log_loss: empty dataset");
  }
  return log_loss(model.predict_proba(data.features), data.labels);
}

MetricsResult compute_metrics(const Eigen::VectorXd& probabilities,
                              const Eigen::VectorXi& labels,
                              double threshold) {
  if (probabilities.size() != labels.size()) {
    throw DataError("compute_metrics: probability/label length mismatch");
  }
  if (labels.size() == 0) {
    throw DataError("compute_metrics: empty input");
  }
  Eigen::Index tp = 0, fp = 0, tn = 0, fn = 0;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const bool predicted = probabilities[i] >= threshold;
    if (labels[i] == 1) {
      (predicted ? tp : fn)++;
    } else {
      (predicted ? fp : tn)++;
    }
  }
  MetricsResult m;
  m.precision = tp + fp > 0 ? double(tp) / double(tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? double(tp) / double(tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  m.fpr = fp + tn > 0 ? double(fp) / double(fp + tn) : 0.0;
  m.accuracy = double(tp + tn) / double(labels.size());
  return m;
}

}  // namespace cleanroom
