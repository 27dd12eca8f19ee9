#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cleanroom/common.hpp"

namespace cleanroom {

/// Labeled feature matrix. Rows are samples, columns are features; labels
/// are binary (0 benign, 1 malicious). Row ids are stable across subsetting
/// so that sanitized datasets can be related back to their source.
///
/// The optional poison mask is ground truth for evaluation only. It is kept
/// behind an accessor so that the flag never leaks into defense logic by
/// accident: defense code operates on the public fields and the row
/// subsetting helpers, which carry the mask through without reading it.
class Dataset {
 public:
  Eigen::MatrixXd features;
  Eigen::VectorXi labels;
  std::vector<std::string> feature_names;
  std::vector<std::int64_t> row_ids;

  Eigen::Index n_rows() const { return features.rows(); }
  Eigen::Index n_cols() const { return features.cols(); }

  /// Checks the structural invariants; throws DataError on violation.
  void validate() const;

  bool has_poison_mask() const { return !poison_mask_.empty(); }
  /// Evaluation-only ground truth. Throws DataError when absent.
  const std::vector<std::uint8_t>& poison_mask() const;
  /// Sets the mask; true entries must be on benign rows (clean-label).
  void set_poison_mask(std::vector<std::uint8_t> mask);
  void clear_poison_mask() { poison_mask_.clear(); }

 private:
  std::vector<std::uint8_t> poison_mask_;
};

/// Per-column standardization parameters. Standard deviations are
/// population values floored at 1.0 when below 1e-12 so constant columns
/// map to zero instead of dividing by ~0.
struct StandardizationStats {
  Eigen::VectorXd mean;
  Eigen::VectorXd stddev;
};

/// New dataset containing the given rows (in the given order), with labels,
/// row ids and poison mask carried along.
Dataset take_rows(const Dataset& data, std::span<const Eigen::Index> rows);

/// Stratified split: each label class is partitioned with the same test
/// fraction (rounded per class). Deterministic in the seed; the output
/// preserves the input's relative row order within each part.
std::pair<Dataset, Dataset> split_dataset(const Dataset& data,
                                          double test_fraction,
                                          std::uint64_t seed);

/// Fits standardization stats on `data` and returns the transformed copy.
std::pair<Dataset, StandardizationStats> standardize(const Dataset& data);

/// Applies previously fitted stats.
Dataset standardize(const Dataset& data, const StandardizationStats& stats);

/// Projects onto the given feature columns, in the given order.
Dataset select_columns(const Dataset& data,
                       std::span<const Eigen::Index> indices);

/// Row positions with the given label.
std::vector<Eigen::Index> rows_with_label(const Dataset& data, int label);

}  // namespace cleanroom
