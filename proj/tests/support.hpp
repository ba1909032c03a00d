#pragma once

#include <map>
#include <memory>
#include <vector>

#include "spe/classifier.hpp"
#include "spe/dataset.hpp"

namespace spe::test {

/// Scores every row with the same value.
class ConstantScorer : public Classifier {
public:
  ConstantScorer(double p, std::size_t n_features = 1) : p_(p), n_(n_features) {}
  std::size_t n_features() const override { return n_; }
  double predict_proba(std::span<const double> x) const override {
    check_arity(x.size());
    return p_;
  }
  Json to_json() const override { return {{"kind", "constant"}, {"p", p_}}; }

private:
  double p_;
  std::size_t n_;
};

/// Looks the score up by the first feature value.
class TableScorer : public Classifier {
public:
  explicit TableScorer(std::map<double, double> table) : table_(std::move(table)) {}
  std::size_t n_features() const override { return 1; }
  double predict_proba(std::span<const double> x) const override {
    check_arity(x.size());
    return table_.at(x[0]);
  }
  Json to_json() const override { return {{"kind", "table"}}; }

private:
  std::map<double, double> table_;
};

inline ClassifierPtr constant(double p, std::size_t n_features = 1) {
  return std::make_shared<ConstantScorer>(p, n_features);
}

/// One feature per row, equal to the row's position.
inline Dataset line_dataset(const std::vector<Label>& labels) {
  std::vector<double> x(labels.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<double>(i);
  return Dataset(std::move(x), 1, labels);
}

inline Dataset one_feature(std::vector<double> x, std::vector<Label> y) {
  return Dataset(std::move(x), 1, std::move(y));
}

}  // namespace spe::test
