#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <limits>
#include <map>
#include <vector>

#include "cleanroom/common.hpp"

namespace cleanroom {

struct OpticsParams {
  int min_samples = 20;
  double max_eps = std::numeric_limits<double>::infinity();
  double xi = 0.10;

  void validate() const;
};

/// OPTICS ordering output. Reachability is indexed by ordered position and
/// core distance by row index; +inf is the undefined sentinel (the first
/// point of each connected component has undefined reachability).
struct ReachabilityResult {
  std::vector<Eigen::Index> ordering;
  Eigen::VectorXd reachability;
  Eigen::VectorXd core_distance;
};

/// Canonical OPTICS over Euclidean distance: the core distance of a point
/// is the distance to its min_samples-th nearest neighbor (the point itself
/// counts as the first), undefined when that exceeds max_eps; expansion
/// always takes the seed with the smallest reachability, ties broken by
/// lowest row index.
ReachabilityResult optics_order(const Eigen::MatrixXd& points,
                                const OpticsParams& params);

struct Clustering {
  Eigen::VectorXi labels;                    // -1 is noise
  std::map<int, Eigen::Index> cluster_sizes; // includes -1 when noise exists
  int largest_id = -1;                       // largest genuine cluster
  int noise_group_id = -1;                   // set by group_noise

  bool has_noise_group() const { return noise_group_id >= 0; }
  std::vector<int> cluster_ids() const;      // sorted, excludes -1
};

/// Xi-method extraction: steep-down/steep-up regions with steepness factor
/// (1 - xi) delimit cluster candidates; nested candidates resolve to the
/// leaves and everything outside a leaf cluster is noise.
Clustering extract_clusters(const ReachabilityResult& result,
                            const OpticsParams& params);

/// Reassigns all noise rows to one pseudo-cluster so downstream scoring
/// covers every row. The pseudo-cluster never becomes largest_id.
Clustering group_noise(const Clustering& clustering);

/// Ordered-position / reachability CSV for offline plotting.
void write_reachability_csv(const ReachabilityResult& result,
                            const std::filesystem::path& path);

}  // namespace cleanroom
