#include "cleanroom/tree.hpp"

#include <algorithm>
#include <cmath>

namespace cleanroom {

double binary_entropy(Eigen::Index positives, Eigen::Index total) {
  if (total == 0 || positives == 0 || positives == total) return 0.0;
  const double p = double(positives) / double(total);
  const double q = 1.0 - p;
  return -(p * std::log2(p) + q * std::log2(q));
}

namespace {

struct BestSplit {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;

  bool beats(const BestSplit& other) const {
    if (feature < 0) return false;
    if (other.feature < 0) return true;
    if (gain != other.gain) return gain > other.gain;
    if (feature != other.feature) return feature < other.feature;
    return threshold < other.threshold;
  }
};

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
              TreeParams params)
      : x_(x), y_(y), params_(params) {}

  std::vector<TreeNode> build() {
    std::vector<Eigen::Index> rows(static_cast<std::size_t>(x_.rows()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i] = static_cast<Eigen::Index>(i);
    }
    grow(std::move(rows), 0);
    return std::move(nodes_);
  }

 private:
  int grow(std::vector<Eigen::Index> rows, int depth) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::Index positives = 0;
    for (const auto r : rows) positives += y_[r];

    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].n_samples = n;
    nodes_[id].impurity = binary_entropy(positives, n);
    nodes_[id].leaf_value = n > 0 ? double(positives) / double(n) : 0.0;

    const bool pure = positives == 0 || positives == n;
    if (pure || depth >= params_.max_depth ||
        n < 2 * params_.min_samples_leaf) {
      return id;
    }

    const BestSplit best = find_best_split(rows, positives);
    if (best.feature < 0 || best.gain <= 0.0) {
      return id;
    }

    std::vector<Eigen::Index> left, right;
    left.reserve(rows.size());
    right.reserve(rows.size());
    for (const auto r : rows) {
      (x_(r, best.feature) <= best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = best.feature;
    nodes_[id].threshold = best.threshold;
    nodes_[id].gain = best.gain;
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  BestSplit find_best_split(const std::vector<Eigen::Index>& rows,
                            Eigen::Index positives) const {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const double parent = binary_entropy(positives, n);
    BestSplit best;
    std::vector<std::pair<double, int>> sorted(rows.size());
    for (int f = 0; f < x_.cols(); ++f) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        sorted[i] = {x_(rows[i], f), y_[rows[i]]};
      }
      std::sort(sorted.begin(), sorted.end());

      Eigen::Index left_n = 0, left_pos = 0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        ++left_n;
        left_pos += sorted[i].second;
        if (sorted[i].first == sorted[i + 1].first) continue;
        if (left_n < params_.min_samples_leaf ||
            n - left_n < params_.min_samples_leaf) {
          continue;
        }
        const double weighted =
            (double(left_n) * binary_entropy(left_pos, left_n) +
             double(n - left_n) *
                 binary_entropy(positives - left_pos, n - left_n)) /
            double(n);
        BestSplit candidate;
        candidate.gain = parent - weighted;
        candidate.feature = f;
        candidate.threshold =
            sorted[i].first + 0.5 * (sorted[i + 1].first - sorted[i].first);
        if (candidate.beats(best)) best = candidate;
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  const Eigen::VectorXi& y_;
  TreeParams params_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

double DecisionTree::predict_row(
    const Eigen::Ref<const Eigen::RowVectorXd>& row) const {
  int at = 0;
  while (nodes[at].feature >= 0) {
    at = row[nodes[at].feature] <= nodes[at].threshold ? nodes[at].left
                                                       : nodes[at].right;
  }
  return nodes[at].leaf_value;
}

Eigen::VectorXd DecisionTree::predict_proba(
    const Eigen::MatrixXd& features) const {
  if (features.cols() != n_features) {
    throw DataError("decision tree: trained on " + std::to_string(n_features) +
                    " features, given " + std::to_string(features.cols()));
  }
  Eigen::VectorXd out(features.rows());
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    out[i] = predict_row(features.row(i));
  }
  return out;
}

DecisionTree train_decision_tree(const Dataset& data, int max_depth,
                                 int min_samples_leaf) {
  if (data.n_rows() == 0) {
    throw DataError("decision tree: empty training data");
  }
  if (max_depth < 1 || min_samples_leaf < 1) {
    throw ConfigError("decision tree: max_depth and min_samples_leaf >= 1");
  }
  DecisionTree tree;
  tree.n_features = data.n_cols();
  tree.params = {max_depth, min_samples_leaf};
  TreeBuilder builder(data.features, data.labels, tree.params);
  tree.nodes = builder.build();
  return tree;
}

Eigen::VectorXd feature_importances(const DecisionTree& tree) {
  Eigen::VectorXd importances = Eigen::VectorXd::Zero(tree.n_features);
  if (tree.nodes.empty()) return importances;
  const double total = double(tree.nodes.front().n_samples);
  for (const auto& node : tree.nodes) {
    if (node.feature >= 0) {
      importances[node.feature] += double(node.n_samples) / total * node.gain;
    }
  }
  const double sum = importances.sum();
  if (sum > 0.0) importances /= sum;
  return importances;
}

}  // namespace cleanroom
