#include "spe/adaboost.hpp"

#include <cmath>

#include "spe/errors.hpp"

namespace spe {

namespace {

const double kMaxStageWeight = 0.5 * std::log(1e10);

int vote(const DecisionTree& tree, std::span<const double> x) {
  return tree.predict_proba(x) >= 0.5 ? 1 : 0;
}

}  // namespace

void AdaBoostParams::validate() const {
  if (n_estimators < 1) throw ParameterError("n_estimators must be >= 1");
  if (weak_learner_depth < 1) throw ParameterError("weak_learner_depth must be >= 1");
  if (!(learning_rate > 0.0)) throw ParameterError("learning_rate must be positive");
}

double adaboost_stage_weight(double err, double learning_rate) {
  if (err <= 0.0) return learning_rate * kMaxStageWeight;
  return learning_rate * 0.5 * std::log((1.0 - err) / err);
}

double adaboost_margin_to_proba(double margin) { return 1.0 / (1.0 + std::exp(-2.0 * margin)); }

AdaBoostModel::AdaBoostModel(std::vector<Stage> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw InvalidModelError("boosted model has no stages");
  for (const auto& s : stages_) {
    if (!(s.weight > 0.0) || !std::isfinite(s.weight))
      throw InvalidModelError("stage weights must be positive and finite");
    if (s.tree.n_features() != stages_.front().tree.n_features())
      throw InvalidModelError("boost stages disagree on feature count");
    weight_total_ += s.weight;
  }
}

std::size_t AdaBoostModel::n_features() const { return stages_.front().tree.n_features(); }

double AdaBoostModel::margin(std::span<const double> x) const {
  check_arity(x.size());
  double m = 0.0;
  for (const auto& s : stages_) m += s.weight * (2.0 * vote(s.tree, x) - 1.0);
  return m / weight_total_;
}

double AdaBoostModel::predict_proba(std::span<const double> x) const {
  return adaboost_margin_to_proba(margin(x));
}

Json AdaBoostModel::to_json() const {
  Json stages = Json::array();
  for (const auto& s : stages_) stages.push_back({{"weight", s.weight}, {"tree", s.tree.to_json()}});
  return {{"kind", "adaboost"}, {"n_features", n_features()}, {"stages", std::move(stages)}};
}

AdaBoostModel AdaBoostModel::from_json(const Json& doc) {
  try {
    if (doc.at("kind").get<std::string>() != "adaboost")
      throw InvalidModelError("not an adaboost document");
    std::vector<Stage> stages;
    for (const auto& j : doc.at("stages"))
      stages.push_back({j.at("weight").get<double>(), DecisionTree::from_json(j.at("tree"))});
    return AdaBoostModel(std::move(stages));
  } catch (const Json::exception& e) {
    throw InvalidModelError(std::string("malformed adaboost document: ") + e.what());
  }
}

AdaBoostModel adaboost_fit(const Dataset& data, const AdaBoostParams& params,
                           std::vector<AdaBoostRound>* trace) {
  params.validate();
  if (!data.has_both_classes()) throw InvalidInputError("adaboost needs both classes present");

  const std::size_t m = data.n_rows();
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  DecisionTreeParams weak;
  weak.max_depth = params.weak_learner_depth;

  std::vector<AdaBoostModel::Stage> stages;
  std::vector<double> vote_sum(m, 0.0);
  std::vector<int> miss(m);

  for (std::size_t t = 0; t < params.n_estimators; ++t) {
    DecisionTree tree = DecisionTree::fit(data, w, weak);
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      miss[i] = vote(tree, data.row(i)) != data.label(i);
      if (miss[i]) err += w[i];
    }
    if (err >= 0.5) {
      // No better than chance. A first round is still kept as a plain weak
      // learner so the model is never empty.
      if (stages.empty()) stages.push_back({1.0, std::move(tree)});
      break;
    }
    const double alpha = adaboost_stage_weight(err, params.learning_rate);
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] *= std::exp(miss[i] ? alpha : -alpha);
      sum += w[i];
    }
    for (double& wi : w) wi /= sum;

    if (trace) {
      AdaBoostRound round{err, alpha, 0.0, 0.0};
      std::size_t wrong = 0;
      for (std::size_t i = 0; i < m; ++i) {
        round.weight_sum_after += w[i];
        vote_sum[i] += alpha * (miss[i] ? (data.label(i) ? -1.0 : 1.0) : (data.label(i) ? 1.0 : -1.0));
        const int predicted = vote_sum[i] >= 0.0 ? 1 : 0;
        wrong += predicted != data.label(i);
      }
      round.training_error = static_cast<double>(wrong) / static_cast<double>(m);
      trace->push_back(round);
    }
    stages.push_back({alpha, std::move(tree)});
  }
  return AdaBoostModel(std::move(stages));
}

AdaBoostLearner::AdaBoostLearner(AdaBoostParams params) : params_(params) { params_.validate(); }

ClassifierPtr AdaBoostLearner::fit(const Dataset& data, RandomSource) const {
  return std::make_shared<AdaBoostModel>(adaboost_fit(data, params_));
}

Json AdaBoostLearner::params() const {
  return {{"n_estimators", params_.n_estimators},
          {"weak_learner_depth", params_.weak_learner_depth},
          {"learning_rate", params_.learning_rate}};
}

}  // namespace spe
