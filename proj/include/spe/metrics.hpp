#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "spe/classifier.hpp"
#include "spe/dataset.hpp"
#include "spe/random.hpp"

namespace spe {

struct ConfusionMatrix {
  std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
};

/// Scores at or above `threshold` count as positive predictions.
ConfusionMatrix confusion(std::span<const Label> labels, std::span<const double> scores,
                          double threshold = 0.5);

/// Confusion-derived statistics. Every 0/0 denominator yields 0. G-mean is
/// sqrt(recall * precision), not the specificity-based variant.
struct ClassificationScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double gmean = 0.0;
  double mcc = 0.0;
};

ClassificationScores classification_scores(const ConfusionMatrix& cm);

/// Area under the precision-recall curve as step-wise average precision.
/// Samples sharing a score form one block evaluated at the block-end
/// precision. Requires both labels present.
double aucprc(std::span<const Label> labels, std::span<const double> scores);

/// Everything reported by `eval` and `metrics`.
struct MetricReport {
  double aucprc = 0.0;
  ClassificationScores at_threshold;
  double threshold = 0.5;

  Json to_json() const;
};

MetricReport evaluate_scores(std::span<const Label> labels, std::span<const double> scores,
                             double threshold = 0.5);
MetricReport evaluate(const Scorer& model, const Dataset& data, double threshold = 0.5);

struct DatasetSplit {
  IndexList train, validation, test;
};

/// Per-class shuffle then cut at rounded fractions; class proportions are
/// preserved within one row per split. Each class needs >= 3 rows.
DatasetSplit stratified_split(const Dataset& data, std::array<double, 3> fractions,
                              RandomSource& rng);

}  // namespace spe
