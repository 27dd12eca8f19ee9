#pragma once

#include <cstdint>

#include "cleanroom/dataset.hpp"

namespace cleanroom {

/// Parameters for the synthetic two-class generator used by desk-scale
/// experiments in place of captured traffic.
///
/// The benign class is a Gaussian mixture with one dominant mode at the
/// origin (55% of benign rows) and nine satellite modes offset on the
/// positive side of the informative axes. The malicious class sits on the
/// negative side, displaced by `class_separation` on the leading
/// informative axis with geometric decay (0.7) across the rest, and with a
/// spread that widens with the displacement. Every offset and spread delta
/// scales with `class_separation`, so at separation 0 both classes collapse
/// to the same isotropic Gaussian. The shape mirrors aggregated flow data:
/// importance concentrated in a few redundant features, a dominant benign
/// population with smaller behavioral modes, and a malicious class that
/// owns the sparse extremes of each informative feature.
struct SyntheticConfig {
  Eigen::Index n_rows = 1000;
  Eigen::Index n_features = 20;
  Eigen::Index n_informative = 6;
  double class_balance = 0.5;     // fraction of malicious rows
  double class_separation = 4.0;  // leading-axis mean gap, >= 0
  std::uint64_t seed = 0;

  void validate() const;
};

Dataset generate_synthetic(const SyntheticConfig& config);

}  // namespace cleanroom
