#pragma once

#include <string>

#include "spe/adaboost.hpp"
#include "spe/classifier.hpp"
#include "spe/decision_tree.hpp"
#include "spe/external_learner.hpp"

namespace spe {

/// Rebuilds a trained member from its JSON document, dispatching on "kind".
ClassifierPtr classifier_from_json(const Json& doc);

/// Everything needed to construct one of the built-in or external learners.
struct LearnerSpec {
  std::string kind = "tree";  // tree | adaboost | external
  DecisionTreeParams tree;
  AdaBoostParams adaboost;
  std::string external_command;
  std::string external_workdir = "external-models";

  LearnerPtr make() const;
  Json to_json() const;
};

}  // namespace spe
