#include "cleanroom/gbdt.hpp"

#include <algorithm>
#include <cmath>

#include "cleanroom/rng.hpp"

namespace cleanroom {

void GbdtConfig::validate() const {
  if (n_rounds < 1) throw ConfigError("gbdt: n_rounds must be >= 1");
  if (learning_rate < 0.0) {
    throw ConfigError("gbdt: learning_rate must be >= 0");
  }
  if (max_depth < 1) throw ConfigError("gbdt: max_depth must be >= 1");
  if (min_samples_leaf < 1) {
    throw ConfigError("gbdt: min_samples_leaf must be >= 1");
  }
  if (!(subsample > 0.0 && subsample <= 1.0)) {
    throw ConfigError("gbdt: subsample must be in (0,1]");
  }
}

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

constexpr double kMinGain = 1e-12;
constexpr double kMinHessian = 1e-16;

/// Builds one least-squares regression tree level by level over presorted
/// feature orders. Rows carry their current node id; a single pass per
/// feature and level finds every node's best boundary between consecutive
/// distinct values.
class RegTreeBuilder {
 public:
  RegTreeBuilder(const Eigen::MatrixXd& x,
                 const std::vector<std::vector<Eigen::Index>>& order,
                 const Eigen::VectorXd& residual, const Eigen::VectorXd& hessian,
                 const GbdtConfig& config)
      : x_(x),
        order_(order),
        residual_(residual),
        hessian_(hessian),
        config_(config) {}

  std::vector<GbdtModel::RegNode> build(const std::vector<char>& in_sample) {
    nodes_.clear();
    node_of_.assign(static_cast<std::size_t>(x_.rows()), -1);

    nodes_.emplace_back();
    NodeStats root;
    for (Eigen::Index r = 0; r < x_.rows(); ++r) {
      if (!in_sample[static_cast<std::size_t>(r)]) continue;
      node_of_[static_cast<std::size_t>(r)] = 0;
      root.add(residual_[r], hessian_[r]);
    }
    std::vector<int> level = {0};
    std::vector<NodeStats> stats = {root};

    for (int depth = 0; depth < config_.max_depth && !level.empty(); ++depth) {
      const auto splits = find_splits(level, stats);
      std::vector<int> next_level;
      std::vector<NodeStats> next_stats;
      std::vector<int> slot_of(nodes_.size(), -1);
      for (std::size_t s = 0; s < level.size(); ++s) {
        const int id = level[s];
        if (splits[s].feature < 0) {
          finalize_leaf(id, stats[s]);
          continue;
        }
        nodes_[id].feature = splits[s].feature;
        nodes_[id].threshold = splits[s].threshold;
        nodes_[id].left = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        nodes_[id].right = static_cast<int>(nodes_.size());
        nodes_.emplace_back();
        slot_of.resize(nodes_.size(), -1);
        slot_of[id] = static_cast<int>(next_level.size());
        next_level.push_back(nodes_[id].left);
        next_level.push_back(nodes_[id].right);
        next_stats.emplace_back();
        next_stats.emplace_back();
      }
      if (next_level.empty()) break;
      for (Eigen::Index r = 0; r < x_.rows(); ++r) {
        int& v = node_of_[static_cast<std::size_t>(r)];
        if (v < 0) continue;
        if (nodes_[v].feature < 0) {
          v = -1;  // settled in a leaf
          continue;
        }
        const int slot = slot_of[v];
        const bool go_left = x_(r, nodes_[v].feature) <= nodes_[v].threshold;
        v = go_left ? nodes_[v].left : nodes_[v].right;
        next_stats[static_cast<std::size_t>(slot * 2 + (go_left ? 0 : 1))].add(
            residual_[r], hessian_[r]);
      }
      level = std::move(next_level);
      stats = std::move(next_stats);
    }
    for (std::size_t s = 0; s < level.size(); ++s) {
      finalize_leaf(level[s], stats[s]);
    }
    return std::move(nodes_);
  }

 private:
  struct NodeStats {
    Eigen::Index count = 0;
    double sum_r = 0.0;
    double sum_h = 0.0;
    void add(double r, double h) {
      ++count;
      sum_r += r;
      sum_h += h;
    }
  };

  struct Split {
    double score = 0.0;  // SSE reduction
    int feature = -1;
    double threshold = 0.0;

    bool beats(const Split& other) const {
      if (feature < 0) return false;
      if (other.feature < 0) return true;
      if (score != other.score) return score > other.score;
      if (feature != other.feature) return feature < other.feature;
      return threshold < other.threshold;
    }
  };

  std::vector<Split> find_splits(const std::vector<int>& level,
                                 const std::vector<NodeStats>& stats) {
    const auto width = level.size();
    std::vector<int> slot(nodes_.size(), -1);
    for (std::size_t s = 0; s < width; ++s) slot[level[s]] = int(s);

    std::vector<Split> best(width);
    std::vector<Eigen::Index> pcnt(width);
    std::vector<double> psum(width), prev(width);

    for (int f = 0; f < x_.cols(); ++f) {
      std::fill(pcnt.begin(), pcnt.end(), 0);
      std::fill(psum.begin(), psum.end(), 0.0);
      for (const Eigen::Index r : order_[static_cast<std::size_t>(f)]) {
        const int v = node_of_[static_cast<std::size_t>(r)];
        if (v < 0) continue;
        const int s = slot[v];
        if (s < 0) continue;
        const double x = x_(r, f);
        if (pcnt[s] > 0 && x > prev[s]) {
          const NodeStats& total = stats[s];
          const Eigen::Index ln = pcnt[s];
          const Eigen::Index rn = total.count - ln;
          if (ln >= config_.min_samples_leaf &&
              rn >= config_.min_samples_leaf) {
            const double ls = psum[s];
            const double rs = total.sum_r - ls;
            const double score = ls * ls / double(ln) + rs * rs / double(rn) -
                                 total.sum_r * total.sum_r /
                                     double(total.count);
            if (score > kMinGain) {
              Split candidate{score, f, prev[s] + 0.5 * (x - prev[s])};
              if (candidate.beats(best[s])) best[s] = candidate;
            }
          }
        }
        ++pcnt[s];
        psum[s] += residual_[r];
        prev[s] = x;
      }
    }
    return best;
  }

  void finalize_leaf(int id, const NodeStats& stats) {
    nodes_[id].feature = -1;
    nodes_[id].value = stats.sum_r / std::max(stats.sum_h, kMinHessian);
  }

  const Eigen::MatrixXd& x_;
  const std::vector<std::vector<Eigen::Index>>& order_;
  const Eigen::VectorXd& residual_;
  const Eigen::VectorXd& hessian_;
  const GbdtConfig& config_;
  std::vector<GbdtModel::RegNode> nodes_;
  std::vector<int> node_of_;
};

double predict_tree(const std::vector<GbdtModel::RegNode>& tree,
                    const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  int at = 0;
  while (tree[at].feature >= 0) {
    at = row[tree[at].feature] <= tree[at].threshold ? tree[at].left
                                                     : tree[at].right;
  }
  return tree[at].value;
}

}  // namespace

Eigen::VectorXd GbdtModel::decision_function(
    const Eigen::MatrixXd& features) const {
  if (features.cols() != n_features) {
    throw DataError("gbdt: trained on " + std::to_string(n_features) +
                    " features, given " + std::to_string(features.cols()));
  }
  Eigen::VectorXd score =
      Eigen::VectorXd::Constant(features.rows(), init_score);
  for (const auto& tree : trees) {
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
      score[i] += config.learning_rate * predict_tree(tree, features.row(i));
    }
  }
  return score;
}

Eigen::VectorXd GbdtModel::predict_proba(
    const Eigen::MatrixXd& features) const {
  return decision_function(features).unaryExpr(
      [](double z) { return sigmoid(z); });
}

GbdtModel train_gbdt(const Dataset& data, const GbdtConfig& config) {
  config.validate();
  const Eigen::Index n = data.n_rows();
  Eigen::Index positives = data.labels.sum();
  if (n == 0 || positives == 0 || positives == n) {
    throw DataError(
        "gbdt: training data must contain both classes (log-odds of the base "
        "rate is undefined otherwise)");
  }

  GbdtModel model;
  model.config = config;
  model.n_features = data.n_cols();
  const double base_rate = double(positives) / double(n);
  model.init_score = std::log(base_rate / (1.0 - base_rate));

  std::vector<std::vector<Eigen::Index>> order(
      static_cast<std::size_t>(data.n_cols()));
  for (Eigen::Index f = 0; f < data.n_cols(); ++f) {
    auto& ord = order[static_cast<std::size_t>(f)];
    ord.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ord[static_cast<std::size_t>(i)] = i;
    std::sort(ord.begin(), ord.end(), [&](Eigen::Index a, Eigen::Index b) {
      const double xa = data.features(a, f), xb = data.features(b, f);
      return xa != xb ? xa < xb : a < b;
    });
  }

  Eigen::VectorXd score = Eigen::VectorXd::Constant(n, model.init_score);
  Eigen::VectorXd residual(n), hessian(n);
  std::vector<char> in_sample(static_cast<std::size_t>(n), 1);
  Rng rng(config.seed);
  const auto sample_size = std::max<Eigen::Index>(
      1, static_cast<Eigen::Index>(config.subsample * double(n)));

  RegTreeBuilder builder(data.features, order, residual, hessian, config);
  for (int round = 0; round < config.n_rounds; ++round) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = sigmoid(score[i]);
      residual[i] = double(data.labels[i]) - p;
      hessian[i] = std::max(p * (1.0 - p), kMinHessian);
    }
    if (config.subsample < 1.0) {
      std::fill(in_sample.begin(), in_sample.end(), 0);
      for (const auto idx : rng.sample_without_replacement(
               static_cast<std::size_t>(n),
               static_cast<std::size_t>(sample_size))) {
        in_sample[idx] = 1;
      }
    }
    auto tree = builder.build(in_sample);
    for (Eigen::Index i = 0; i < n; ++i) {
      score[i] +=
          config.learning_rate * predict_tree(tree, data.features.row(i));
    }
    model.trees.push_back(std::move(tree));
  }
  return model;
}

}  // namespace cleanroom
