#include "spe/learners.hpp"

#include "spe/errors.hpp"

namespace spe {

ClassifierPtr classifier_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw InvalidModelError("member document lacks a \"kind\" field");
  const auto kind = doc.at("kind").get<std::string>();
  if (kind == "tree") return std::make_shared<DecisionTree>(DecisionTree::from_json(doc));
  if (kind == "adaboost") return std::make_shared<AdaBoostModel>(AdaBoostModel::from_json(doc));
  if (kind == "external")
    return std::make_shared<ExternalClassifier>(ExternalClassifier::from_json(doc));
  throw InvalidModelError("unknown member kind \"" + kind + "\"");
}

LearnerPtr LearnerSpec::make() const {
  if (kind == "tree") return std::make_shared<TreeLearner>(tree);
  if (kind == "adaboost") return std::make_shared<AdaBoostLearner>(adaboost);
  if (kind == "external") return std::make_shared<ExternalLearner>(external_command, external_workdir);
  throw ParameterError("unknown base learner \"" + kind + "\" (valid: tree, adaboost, external)");
}

Json LearnerSpec::to_json() const { return {{"kind", kind}, {"params", make()->params()}}; }

}  // namespace spe
