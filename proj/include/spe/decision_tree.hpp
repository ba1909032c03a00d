#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spe/classifier.hpp"

namespace spe {

struct DecisionTreeParams {
  int max_depth = 10;
  std::size_t min_samples_split = 2;
  double min_impurity_decrease = 0.0;

  void validate() const;
};

/// Binary CART tree trained on weighted Gini impurity.
///
/// Candidate thresholds are midpoints between consecutive distinct feature
/// values; a row goes left when `x[feature] <= threshold`. Impurity ties are
/// broken by lowest feature index, then lowest threshold.
class DecisionTree : public Classifier {
public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double probability = 0.0;  // leaf only
    std::size_t samples = 0;   // unweighted training rows reaching the node

    bool is_leaf() const noexcept { return feature < 0; }
  };

  DecisionTree(std::vector<Node> nodes, std::size_t n_features);

  static DecisionTree fit(const Dataset& data, std::span<const double> weights,
                          const DecisionTreeParams& params);
  static DecisionTree fit(const Dataset& data, const DecisionTreeParams& params) {
    return fit(data, {}, params);
  }

  std::size_t n_features() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int depth() const;

  Json to_json() const override;
  static DecisionTree from_json(const Json& doc);

private:
  std::vector<Node> nodes_;
  std::size_t n_features_;
};

/// Weighted Gini impurity 1 - p1^2 - p0^2 given class weight totals.
double gini(double weight_pos, double weight_neg);

class TreeLearner : public Learner {
public:
  explicit TreeLearner(DecisionTreeParams params);
  std::string name() const override { return "tree"; }
  ClassifierPtr fit(const Dataset& data, RandomSource rng) const override;
  Json params() const override;

private:
  DecisionTreeParams params_;
};

}  // namespace spe
