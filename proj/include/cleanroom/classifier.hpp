#pragma once

#include <json.hpp>
#include <string>
#include <variant>

#include "cleanroom/gbdt.hpp"
#include "cleanroom/linear.hpp"
#include "cleanroom/tree.hpp"

namespace cleanroom {

enum class ModelKind { decision_tree, gbdt, linear };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// One configuration bundle for all surrogate kinds; the active kind picks
/// which sub-config applies.
struct SurrogateConfig {
  ModelKind kind = ModelKind::gbdt;
  GbdtConfig gbdt;
  TreeParams tree;
  LinearConfig linear;
};

/// A trained classifier of any supported kind.
class Classifier {
 public:
  std::variant<DecisionTree, GbdtModel, LinearModel> model;

  ModelKind kind() const;
  Eigen::Index n_features() const;
  /// Probability of label 1 per row; checks the column count.
  Eigen::VectorXd predict_proba(const Eigen::MatrixXd& features) const;
};

Classifier train_surrogate(const Dataset& data, const SurrogateConfig& config);

/// Versioned JSON round trip for report reproducibility.
nlohmann::json classifier_to_json(const Classifier& model);
Classifier classifier_from_json(const nlohmann::json& doc);

}  // namespace cleanroom
