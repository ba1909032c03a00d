#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spe/dataset.hpp"
#include "spe/random.hpp"

namespace spe {

using Json = nlohmann::json;

/// Anything that maps a feature row to a positive-class probability in [0, 1].
class Scorer {
public:
  virtual ~Scorer() = default;

  virtual std::size_t n_features() const = 0;
  virtual double predict_proba(std::span<const double> x) const = 0;

  /// Scores `rows` of `data` into `out` (same length). The default loops over
  /// predict_proba; learners backed by an external process override it.
  virtual void predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                            std::span<double> out) const;

  std::vector<double> predict_all(const Dataset& data) const;
  std::vector<double> predict_rows(const Dataset& data, std::span<const std::size_t> rows) const;

protected:
  void check_arity(std::size_t got) const;
};

/// A trained, immutable base model.
class Classifier : public Scorer {
public:
  virtual Json to_json() const = 0;
};

using ClassifierPtr = std::shared_ptr<const Classifier>;

/// A training recipe: produces a Classifier from a dataset.
class Learner {
public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual ClassifierPtr fit(const Dataset& data, RandomSource rng) const = 0;
  /// Hyper-parameter echo for reports and model metadata.
  virtual Json params() const = 0;
};

using LearnerPtr = std::shared_ptr<const Learner>;

}  // namespace spe
