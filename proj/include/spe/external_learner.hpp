#pragma once

#include <filesystem>
#include <string>

#include "spe/classifier.hpp"

namespace spe {

/// Base learner delegated to an external program.
///
/// Protocol (all files comma-separated with a header row):
///   <command> fit <train.csv> <model-path>
///       train.csv holds the feature columns followed by a `label` column
///       (0/1). The program persists whatever it needs at <model-path>.
///   <command> predict <model-path> <features.csv> <scores.txt>
///       features.csv holds feature columns only; the program writes one
///       probability in [0, 1] per line, in row order.
/// A nonzero exit status from either call is an error.
class ExternalClassifier : public Classifier {
public:
  ExternalClassifier(std::string command, std::filesystem::path model_path,
                     std::size_t n_features);

  std::size_t n_features() const override { return n_features_; }
  double predict_proba(std::span<const double> x) const override;
  using Scorer::predict_rows;
  void predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                    std::span<double> out) const override;

  const std::filesystem::path& model_path() const noexcept { return model_path_; }

  Json to_json() const override;
  static ExternalClassifier from_json(const Json& doc);

private:
  std::string command_;
  std::filesystem::path model_path_;
  std::size_t n_features_;
};

class ExternalLearner : public Learner {
public:
  /// Model and scratch files are created under `workdir`.
  ExternalLearner(std::string command, std::filesystem::path workdir);

  std::string name() const override { return "external"; }
  ClassifierPtr fit(const Dataset& data, RandomSource rng) const override;
  Json params() const override;

private:
  std::string command_;
  std::filesystem::path workdir_;
};

}  // namespace spe
