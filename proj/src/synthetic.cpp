#include "cleanroom/synthetic.hpp"

#include <cmath>

#include "cleanroom/rng.hpp"

namespace cleanroom {

namespace {

constexpr int kModes = 10;           // 1 dominant + 9 satellites
constexpr double kDominantWeight = 0.55;
constexpr double kAxisDecay = 0.7;
constexpr double kMaliciousWiden = 0.2;
constexpr double kBenignTighten = 0.35;
constexpr double kBenignSigmaFloor = 0.3;
constexpr double kSatelliteSteps[] = {1.0, 1.7, 2.4, 3.1};

}  // namespace

void SyntheticConfig::validate() const {
  if (n_rows < 10) {
    throw ConfigError("synthetic: n_rows must be >= 10");
  }
  if (n_features < 1 || n_informative < 1 || n_informative > n_features) {
    throw ConfigError("synthetic: need 1 <= n_informative <= n_features");
  }
  if (!(class_balance > 0.0 && class_balance < 1.0)) {
    throw ConfigError("synthetic: class_balance must be in (0,1)");
  }
  if (class_separation < 0.0) {
    throw ConfigError("synthetic: class_separation must be >= 0");
  }
}

Dataset generate_synthetic(const SyntheticConfig& config) {
  config.validate();
  Rng rng(config.seed);

  const Eigen::Index d = config.n_features;
  const Eigen::Index di = config.n_informative;
  const auto n_malicious = static_cast<Eigen::Index>(
      std::llround(config.class_balance * static_cast<double>(config.n_rows)));
  const Eigen::Index n_benign = config.n_rows - n_malicious;

  Eigen::VectorXd seps(di), sigma_b(di), sigma_m(di);
  for (Eigen::Index j = 0; j < di; ++j) {
    seps[j] = config.class_separation * std::pow(kAxisDecay, double(j));
    sigma_b[j] = std::max(1.0 - kBenignTighten * seps[j], kBenignSigmaFloor);
    sigma_m[j] = 1.0 + kMaliciousWiden * seps[j];
  }

  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(kModes, di);
  for (int k = 1; k < kModes; ++k) {
    for (Eigen::Index j = 0; j < di; ++j) {
      centers(k, j) = kSatelliteSteps[rng.uniform_index(4)] * seps[j];
    }
  }

  Dataset data;
  data.features.resize(config.n_rows, d);
  data.labels.resize(config.n_rows);

  const double satellite_weight = (1.0 - kDominantWeight) / (kModes - 1);
  for (Eigen::Index i = 0; i < config.n_rows; ++i) {
    const bool malicious = i >= n_benign;
    data.labels[i] = malicious ? 1 : 0;
    int mode = 0;
    if (!malicious) {
      double u = rng.next_unit();
      if (u >= kDominantWeight) {
        mode = 1 + static_cast<int>((u - kDominantWeight) / satellite_weight);
        if (mode >= kModes) mode = kModes - 1;
      }
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const double z = rng.normal();
      if (j >= di) {
        data.features(i, j) = z;  // class-independent noise axis
      } else if (malicious) {
        data.features(i, j) = z * sigma_m[j] - seps[j];
      } else {
        data.features(i, j) = z * sigma_b[j] + centers(mode, j);
      }
    }
  }

  std::vector<Eigen::Index> perm(static_cast<std::size_t>(config.n_rows));
  for (std::size_t i = 0; i < perm.size(); ++i) {
    perm[i] = static_cast<Eigen::Index>(i);
  }
  rng.shuffle(perm);

  Dataset out;
  out.features.resize(config.n_rows, d);
  out.labels.resize(config.n_rows);
  for (Eigen::Index i = 0; i < config.n_rows; ++i) {
    out.features.row(i) = data.features.row(perm[static_cast<std::size_t>(i)]);
    out.labels[i] = data.labels[perm[static_cast<std::size_t>(i)]];
  }
  out.feature_names.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    out.feature_names.push_back("f" + std::to_string(j));
  }
  out.row_ids.resize(static_cast<std::size_t>(config.n_rows));
  for (std::size_t i = 0; i < out.row_ids.size(); ++i) {
    out.row_ids[i] = static_cast<std::int64_t>(i);
  }
  return out;
}

}  // namespace cleanroom
