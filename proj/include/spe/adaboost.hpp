#pragma once

#include <cstddef>
#include <vector>

#include "spe/decision_tree.hpp"

namespace spe {

struct AdaBoostParams {
  std::size_t n_estimators = 10;
  int weak_learner_depth = 1;
  double learning_rate = 1.0;

  void validate() const;
};

/// Per-round diagnostics recorded by adaboost_fit when requested.
struct AdaBoostRound {
  double error = 0.0;
  double stage_weight = 0.0;
  double weight_sum_after = 0.0;   // after renormalization
  double training_error = 0.0;     // unweighted error of the boosted vote so far
};

/// Stage weight for a round with weighted error `err`:
/// learning_rate * 0.5 * ln((1 - err) / err), capped at 0.5 * ln(1e10) when err == 0.
double adaboost_stage_weight(double err, double learning_rate);

/// Discrete two-class AdaBoost over depth-limited trees.
///
/// The probability output passes the stage-weight-normalized vote margin
/// m in [-1, 1] through 1 / (1 + exp(-2m)).
class AdaBoostModel : public Classifier {
public:
  struct Stage {
    double weight;
    DecisionTree tree;
  };

  explicit AdaBoostModel(std::vector<Stage> stages);

  std::size_t n_features() const override;
  double predict_proba(std::span<const double> x) const override;
  /// Stage-weight-normalized vote in [-1, 1].
  double margin(std::span<const double> x) const;

  const std::vector<Stage>& stages() const noexcept { return stages_; }

  Json to_json() const override;
  static AdaBoostModel from_json(const Json& doc);

private:
  std::vector<Stage> stages_;
  double weight_total_ = 0.0;
};

/// Probability map applied to a vote margin.
double adaboost_margin_to_proba(double margin);

AdaBoostModel adaboost_fit(const Dataset& data, const AdaBoostParams& params,
                           std::vector<AdaBoostRound>* trace = nullptr);

class AdaBoostLearner : public Learner {
public:
  explicit AdaBoostLearner(AdaBoostParams params);
  std::string name() const override { return "adaboost"; }
  ClassifierPtr fit(const Dataset& data, RandomSource rng) const override;
  Json params() const override;

private:
  AdaBoostParams params_;
};

}  // namespace spe
