#include "spe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spe/errors.hpp"
#include "spe/sampling.hpp"

namespace spe {

namespace {

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

ConfusionMatrix confusion(std::span<const Label> labels, std::span<const double> scores,
                          double threshold) {
  if (labels.size() != scores.size())
    throw InvalidInputError("labels and scores differ in length (" + std::to_string(labels.size()) +
                            " vs " + std::to_string(scores.size()) + ")");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (labels[i]) (predicted ? cm.tp : cm.fn)++;
    else (predicted ? cm.fp : cm.tn)++;
  }
  return cm;
}

ClassificationScores classification_scores(const ConfusionMatrix& cm) {
  const double tp = static_cast<double>(cm.tp), fp = static_cast<double>(cm.fp);
  const double fn = static_cast<double>(cm.fn), tn = static_cast<double>(cm.tn);
  ClassificationScores s;
  s.recall = ratio(tp, tp + fn);
  s.precision = ratio(tp, tp + fp);
  s.f1 = ratio(2.0 * s.recall * s.precision, s.recall + s.precision);
  s.gmean = std::sqrt(s.recall * s.precision);
  const double den = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
  s.mcc = ratio(tp * tn - fp * fn, den);
  return s;
}

double aucprc(std::span<const Label> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) throw InvalidInputError("labels and scores differ in length");
  std::size_t n_pos = 0;
  for (Label y : labels) n_pos += y ? 1 : 0;
  if (n_pos == 0 || n_pos == labels.size())
    throw InvalidInputError("AUCPRC needs at least one positive and one negative label");

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  double ap = 0.0;
  std::uint64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::uint64_t block_pos = 0;
    std::size_t j = i;
    for (; j < order.size() && scores[order[j]] == scores[order[i]]; ++j) {
      if (labels[order[j]]) ++block_pos;
      else ++fp;
    }
    tp += block_pos;
    if (block_pos > 0)
      ap += (static_cast<double>(block_pos) / static_cast<double>(n_pos)) *
            (static_cast<double>(tp) / static_cast<double>(tp + fp));
    i = j;
  }
  return ap;
}

Json MetricReport::to_json() const {
  return {{"aucprc", aucprc},
          {"f1", at_threshold.f1},
          {"gmean", at_threshold.gmean},
          {"mcc", at_threshold.mcc},
          {"precision", at_threshold.precision},
          {"recall", at_threshold.recall},
          {"threshold", threshold}};
}

MetricReport evaluate_scores(std::span<const Label> labels, std::span<const double> scores,
                             double threshold) {
  MetricReport r;
  r.threshold = threshold;
  r.aucprc = aucprc(labels, scores);
  r.at_threshold = classification_scores(confusion(labels, scores, threshold));
  return r;
}

MetricReport evaluate(const Scorer& model, const Dataset& data, double threshold) {
  const auto scores = model.predict_all(data);
  return evaluate_scores(data.labels(), scores, threshold);
}

DatasetSplit stratified_split(const Dataset& data, std::array<double, 3> fractions,
                              RandomSource& rng) {
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw ParameterError("split fractions must be nonnegative");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("split fractions must sum to 1");
  if (data.n_minority() < 3 || data.n_majority() < 3)
    throw InvalidInputError("stratified split needs at least 3 rows of each class");

  DatasetSplit split;
  for (const IndexList* cls : {&data.majority_indices(), &data.minority_indices()}) {
    const IndexList shuffled = sample_without_replacement(*cls, cls->size(), rng);
    const double n = static_cast<double>(shuffled.size());
    const auto n_train = static_cast<std::size_t>(std::llround(fractions[0] * n));
    const auto n_val = std::min(shuffled.size() - n_train,
                                static_cast<std::size_t>(std::llround(fractions[1] * n)));
    auto it = shuffled.begin();
    split.train.insert(split.train.end(), it, it + n_train);
    split.validation.insert(split.validation.end(), it + n_train, it + n_train + n_val);
    split.test.insert(split.test.end(), it + n_train + n_val, shuffled.end());
  }
  for (IndexList* part : {&split.train, &split.validation, &split.test})
    std::sort(part->begin(), part->end());
  return split;
}

}  // namespace spe
