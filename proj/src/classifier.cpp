#include "cleanroom/classifier.hpp"

namespace cleanroom {

using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::gbdt: return "gbdt";
    case ModelKind::linear: return "linear";
  }
  throw ConfigError("unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "decision_tree") return ModelKind::decision_tree;
  if (name == "gbdt") return ModelKind::gbdt;
  if (name == "linear") return ModelKind::linear;
  throw ConfigError("unknown model kind '" + name + "'");
}

ModelKind Classifier::kind() const {
  return static_cast<ModelKind>(model.index());
}

Eigen::Index Classifier::n_features() const {
  return std::visit([](const auto& m) { return m.n_features; }, model);
}

Eigen::VectorXd Classifier::predict_proba(
    const Eigen::MatrixXd& features) const {
  return std::visit([&](const auto& m) { return m.predict_proba(features); },
                    model);
}

Classifier train_surrogate(const Dataset& data, const SurrogateConfig& config) {
  if (data.n_rows() == 0) throw DataError("train_surrogate: empty data");
  Classifier out;
  switch (config.kind) {
    case ModelKind::decision_tree: {
      const Eigen::Index positives = data.labels.sum();
      if (positives == 0 || positives == data.n_rows()) {
        throw DataError("train_surrogate: data must contain both classes");
      }
      out.model = train_decision_tree(data, config.tree.max_depth,
                                      config.tree.min_samples_leaf);
      break;
    }
    case ModelKind::gbdt:
      out.model = train_gbdt(data, config.gbdt);
      break;
    case ModelKind::linear:
      out.model = train_linear(data, config.linear);
      break;
  }
  return out;
}

namespace {

json tree_nodes_to_json(const std::vector<TreeNode>& nodes) {
  json arr = json::array();
  for (const auto& n : nodes) {
    arr.push_back({{"feature", n.feature},
                   {"threshold", n.threshold},
                   {"left", n.left},
                   {"right", n.right},
                   {"leaf_value", n.leaf_value},
                   {"n_samples", n.n_samples},
                   {"impurity", n.impurity},
                   {"gain", n.gain}});
  }
  return arr;
}

std::vector<TreeNode> tree_nodes_from_json(const json& arr) {
  std::vector<TreeNode> nodes;
  for (const auto& j : arr) {
    TreeNode n;
    n.feature = j.at("feature");
    n.threshold = j.at("threshold");
    n.left = j.at("left");
    n.right = j.at("right");
    n.leaf_value = j.at("leaf_value");
    n.n_samples = j.at("n_samples");
    n.impurity = j.at("impurity");
    n.gain = j.at("gain");
    nodes.push_back(n);
  }
  return nodes;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = arr[i];
  }
  return v;
}

}  // namespace

nlohmann::json classifier_to_json(const Classifier& model) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = to_string(model.kind());
  doc["n_features"] = model.n_features();
  switch (model.kind()) {
    case ModelKind::decision_tree: {
      const auto& tree = std::get<DecisionTree>(model.model);
      doc["config"] = {{"max_depth", tree.params.max_depth},
                       {"min_samples_leaf", tree.params.min_samples_leaf}};
      doc["nodes"] = tree_nodes_to_json(tree.nodes);
      break;
    }
    case ModelKind::gbdt: {
      const auto& gbdt = std::get<GbdtModel>(model.model);
      doc["config"] = {{"n_rounds", gbdt.config.n_rounds},
                       {"learning_rate", gbdt.config.learning_rate},
                       {"max_depth", gbdt.config.max_depth},
                       {"min_samples_leaf", gbdt.config.min_samples_leaf},
                       {"subsample", gbdt.config.subsample},
                       {"seed", gbdt.config.seed}};
      doc["init_score"] = gbdt.init_score;
      json trees = json::array();
      for (const auto& tree : gbdt.trees) {
        json nodes = json::array();
        for (const auto& n : tree) {
          nodes.push_back({{"feature", n.feature},
                           {"threshold", n.threshold},
                           {"left", n.left},
                           {"right", n.right},
                           {"value", n.value}});
        }
        trees.push_back(std::move(nodes));
      }
      doc["trees"] = std::move(trees);
      break;
    }
    case ModelKind::linear: {
      const auto& lin = std::get<LinearModel>(model.model);
      doc["config"] = {{"iterations", lin.config.iterations},
                       {"step_size", lin.config.step_size}};
      doc["weights"] = vector_to_json(lin.weights);
      doc["bias"] = lin.bias;
      doc["mean"] = vector_to_json(lin.stats.mean);
      doc["stddev"] = vector_to_json(lin.stats.stddev);
      break;
    }
  }
  return doc;
}

Classifier classifier_from_json(const nlohmann::json& doc) {
  if (doc.at("schema_version") != kSchemaVersion) {
    throw DataError("classifier: unsupported schema version");
  }
  const ModelKind kind = model_kind_from_string(doc.at("kind"));
  Classifier out;
  switch (kind) {
    case ModelKind::decision_tree: {
      DecisionTree tree;
      tree.n_features = doc.at("n_features");
      tree.params.max_depth = doc.at("config").at("max_depth");
      tree.params.min_samples_leaf = doc.at("config").at("min_samples_leaf");
      tree.nodes = tree_nodes_from_json(doc.at("nodes"));
      out.model = std::move(tree);
      break;
    }
    case ModelKind::gbdt: {
      GbdtModel gbdt;
      gbdt.n_features = doc.at("n_features");
      const auto& cfg = doc.at("config");
      gbdt.config.n_rounds = cfg.at("n_rounds");
      gbdt.config.learning_rate = cfg.at("learning_rate");
      gbdt.config.max_depth = cfg.at("max_depth");
      gbdt.config.min_samples_leaf = cfg.at("min_samples_leaf");
      gbdt.config.subsample = cfg.at("subsample");
      gbdt.config.seed = cfg.at("seed");
      gbdt.init_score = doc.at("init_score");
      for (const auto& tj : doc.at("trees")) {
        std::vector<GbdtModel::RegNode> tree;
        for (const auto& nj : tj) {
          GbdtModel::RegNode n;
          n.feature = nj.at("feature");
          n.threshold = nj.at("threshold");
          n.left = nj.at("left");
          n.right = nj.at("right");
          n.value = nj.at("value");
          tree.push_back(n);
        }
        gbdt.trees.push_back(std::move(tree));
      }
      out.model = std::move(gbdt);
      break;
    }
    case ModelKind::linear: {
      LinearModel lin;
      lin.n_features = doc.at("n_features");
      lin.config.iterations = doc.at("config").at("iterations");
      lin.config.step_size = doc.at("config").at("step_size");
      lin.weights = vector_from_json(doc.at("weights"));
      lin.bias = doc.at("bias");
      lin.stats.mean = vector_from_json(doc.at("mean"));
      lin.stats.stddev = vector_from_json(doc.at("stddev"));
      out.model = std::move(lin);
      break;
    }
  }
  return out;
}

}  // namespace cleanroom
