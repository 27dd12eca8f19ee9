#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cleanroom/dataset.hpp"

namespace cleanroom {

struct TreeParams {
  int max_depth = 10;
  int min_samples_leaf = 5;
};

/// Node of a binary classification tree. Internal nodes route rows with
/// feature value <= threshold to the left child; leaves hold the fraction
/// of malicious (label 1) samples.
struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;
  Eigen::Index n_samples = 0;
  double impurity = 0.0;  // entropy, bits
  double gain = 0.0;      // information gain of the split (internal nodes)
};

/// Greedy top-down entropy tree. Split candidates are the midpoints between
/// consecutive distinct sorted values of each feature; the (feature,
/// threshold) pair with maximal information gain wins, ties broken by
/// lowest feature index then lowest threshold.
class DecisionTree {
 public:
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  Eigen::Index n_features = 0;
  TreeParams params;

  double predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& row) const;
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& features) const;
};

DecisionTree train_decision_tree(const Dataset& data, int max_depth,
                                 int min_samples_leaf);

/// Importance of feature j: sum over nodes splitting on j of
/// (node samples / total samples) * gain, normalized to sum 1. All zeros
/// for a single-leaf tree.
Eigen::VectorXd feature_importances(const DecisionTree& tree);

/// Binary entropy in bits of a positive-count / total pair.
double binary_entropy(Eigen::Index positives, Eigen::Index total);

}  // namespace cleanroom
