#include "cleanroom/dataset.hpp"

#include <algorithm>
#include <unordered_set>

#include "cleanroom/rng.hpp"

namespace cleanroom {

void Dataset::validate() const {
  const auto rows = features.rows();
  if (labels.size() != rows) {
    throw DataError("dataset: label count " + std::to_string(labels.size()) +
                    " does not match row count " + std::to_string(rows));
  }
  if (static_cast<Eigen::Index>(row_ids.size()) != rows) {
    throw DataError("dataset: row_id count does not match row count");
  }
  if (static_cast<Eigen::Index>(feature_names.size()) != features.cols()) {
    throw DataError("dataset: feature name count does not match column count");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names) {
    if (!seen.insert(name).second) {
      throw DataError("dataset: duplicate feature name '" + name + "'");
    }
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DataError("dataset: label at row " + std::to_string(i) +
                      " is " + std::to_string(labels[i]) +
                      "; only binary labels {0,1} are supported");
    }
  }
  if (!poison_mask_.empty()) {
    if (static_cast<Eigen::Index>(poison_mask_.size()) != rows) {
      throw DataError("dataset: poison mask length does not match row count");
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (poison_mask_[i] && labels[i] != 0) {
        throw DataError("dataset: poison mask set on malicious row " +
                        std::to_string(i) +
                        "; clean-label poison marks benign rows only");
      }
    }
  }
}

const std::vector<std::uint8_t>& Dataset::poison_mask() const {
  if (poison_mask_.empty()) {
    throw DataError("dataset: poison mask requested but not present");
  }
  return poison_mask_;
}

void Dataset::set_poison_mask(std::vector<std::uint8_t> mask) {
  if (static_cast<Eigen::Index>(mask.size()) != n_rows()) {
    throw DataError("dataset: poison mask length does not match row count");
  }
  for (Eigen::Index i = 0; i < n_rows(); ++i) {
    if (mask[i] && labels[i] != 0) {
      throw DataError("dataset: poison mask set on malicious row " +
                      std::to_string(i));
    }
  }
  poison_mask_ = std::move(mask);
}

Dataset take_rows(const Dataset& data, std::span<const Eigen::Index> rows) {
  Dataset out;
  out.feature_names = data.feature_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), data.n_cols());
  out.labels.resize(static_cast<Eigen::Index>(rows.size()));
  out.row_ids.reserve(rows.size());
  std::vector<std::uint8_t> mask;
  if (data.has_poison_mask()) mask.reserve(rows.size());
  Eigen::Index at = 0;
  for (const Eigen::Index r : rows) {
    if (r < 0 || r >= data.n_rows()) {
      throw DataError("take_rows: row index " + std::to_string(r) +
                      " out of range");
    }
    out.features.row(at) = data.features.row(r);
    out.labels[at] = data.labels[r];
    out.row_ids.push_back(data.row_ids[static_cast<std::size_t>(r)]);
    if (data.has_poison_mask()) {
      mask.push_back(data.poison_mask()[static_cast<std::size_t>(r)]);
    }
    ++at;
  }
  if (data.has_poison_mask()) out.set_poison_mask(std::move(mask));
  return out;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& data,
                                          double test_fraction,
                                          std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("split_dataset: test_fraction must be in (0,1)");
  }
  data.validate();
  std::vector<Eigen::Index> by_class[2];
  for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
    by_class[data.labels[i]].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].size() < 2) {
      throw DataError("split_dataset: insufficient class support; label " +
                      std::to_string(c) + " has " +
                      std::to_string(by_class[c].size()) + " rows (need >= 2)");
    }
  }

  Rng rng(seed);
  std::vector<Eigen::Index> test_rows;
  std::vector<Eigen::Index> train_rows;
  for (int c = 0; c < 2; ++c) {
    auto& cls = by_class[c];
    rng.shuffle(cls);
    const auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(cls.size())));
    for (std::size_t i = 0; i < cls.size(); ++i) {
      (i < n_test ? test_rows : train_rows).push_back(cls[i]);
    }
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  return {take_rows(data, train_rows), take_rows(data, test_rows)};
}

namespace {

constexpr double kStdFloor = 1e-12;

StandardizationStats fit_stats(const Dataset& data) {
  StandardizationStats stats;
  const auto n = static_cast<double>(data.n_rows());
  stats.mean = data.features.colwise().mean();
  stats.stddev.resize(data.n_cols());
  for (Eigen::Index j = 0; j < data.n_cols(); ++j) {
    const double var =
        (data.features.col(j).array() - stats.mean[j]).square().sum() / n;
    const double sd = std::sqrt(var);
    stats.stddev[j] = sd < kStdFloor ? 1.0 : sd;
  }
  return stats;
}

}  // namespace

std::pair<Dataset, StandardizationStats> standardize(const Dataset& data) {
  if (data.n_rows() == 0) {
    throw DataError("standardize: empty dataset");
  }
  StandardizationStats stats = fit_stats(data);
  return {standardize(data, stats), std::move(stats)};
}

Dataset standardize(const Dataset& data, const StandardizationStats& stats) {
  if (stats.mean.size() != data.n_cols() ||
      stats.stddev.size() != data.n_cols()) {
    throw DataError("standardize: stats fitted on " +
                    std::to_string(stats.mean.size()) +
                    " columns, dataset has " + std::to_string(data.n_cols()));
  }
  Dataset out = data;
  out.features = (data.features.rowwise() - stats.mean.transpose()).array()
                     .rowwise() /
                 stats.stddev.transpose().array();
  return out;
}

Dataset select_columns(const Dataset& data,
                       std::span<const Eigen::Index> indices) {
  std::unordered_set<Eigen::Index> seen;
  for (const Eigen::Index j : indices) {
    if (j < 0 || j >= data.n_cols()) {
      throw DataError("select_columns: index " + std::to_string(j) +
                      " out of range for " + std::to_string(data.n_cols()) +
                      " columns");
    }
    if (!seen.insert(j).second) {
      throw DataError("select_columns: duplicate index " + std::to_string(j));
    }
  }
  Dataset out;
  out.labels = data.labels;
  out.row_ids = data.row_ids;
  out.features.resize(data.n_rows(), static_cast<Eigen::Index>(indices.size()));
  out.feature_names.reserve(indices.size());
  Eigen::Index at = 0;
  for (const Eigen::Index j : indices) {
    out.features.col(at++) = data.features.col(j);
    out.feature_names.push_back(data.feature_names[static_cast<std::size_t>(j)]);
  }
  if (data.has_poison_mask()) {
    out.set_poison_mask(data.poison_mask());
  }
  return out;
}

std::vector<Eigen::Index> rows_with_label(const Dataset& data, int label) {
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < data.n_rows(); ++i) {
    if (data.labels[i] == label) rows.push_back(i);
  }
  return rows;
}

}  // namespace cleanroom
