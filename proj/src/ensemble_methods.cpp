#include "spe/ensemble_methods.hpp"

#include <algorithm>
#include <cmath>

#include "spe/errors.hpp"

namespace spe {

namespace {

void require_both_classes(const Dataset& data) {
  if (!data.has_both_classes())
    throw InvalidInputError("training data must contain both classes (minority " +
                            std::to_string(data.n_minority()) + ", majority " +
                            std::to_string(data.n_majority()) + ")");
}

void require_learner(const LearnerPtr& learner) {
  if (!learner) throw ParameterError("no base learner configured");
}

ClassifierPtr train_member(const Learner& learner, const Dataset& data, const IndexList& rows,
                           RandomSource rng, const std::string& context) {
  try {
    return learner.fit(data.subset(rows), rng);
  } catch (const Error& e) {
    throw Error(e.kind(), context + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error("learner", context + ": " + e.what());
  }
}

Json learner_json(const LearnerPtr& l) { return {{"kind", l->name()}, {"params", l->params()}}; }

}  // namespace

Json TrainingReport::to_json() const {
  Json iters = Json::array();
  for (const auto& it : spe_iterations) {
    Json mean = Json::array();
    for (double h : it.mean_hardness) mean.push_back(std::isnan(h) ? Json(nullptr) : Json(h));
    iters.push_back({{"iteration", it.iteration},
                     {"alpha", it.alpha},
                     {"bin_edges", it.edges},
                     {"bin_sizes", it.bin_sizes},
                     {"bin_mean_hardness", std::move(mean)},
                     {"bin_weights", it.weights},
                     {"quotas", it.quotas},
                     {"subset_minority", it.subset_minority},
                     {"subset_majority", it.subset_majority},
                     {"with_replacement", it.with_replacement}});
  }
  Json alphas = Json::array();
  for (const auto& it : spe_iterations) alphas.push_back(it.alpha);
  return {{"method", method},
          {"learners_trained", learners_trained},
          {"alphas", std::move(alphas)},
          {"iterations", std::move(iters)},
          {"subset_sizes", subset_sizes},
          {"pool_sizes", pool_sizes},
          {"used_replacement", used_replacement}};
}

FitResult spe_fit(const Dataset& data, const SpeConfig& config, const TrainingHooks& hooks) {
  require_both_classes(data);
  require_learner(config.base_learner);
  if (config.n_estimators < 1) throw ParameterError("n_estimators must be >= 1");
  if (config.k_bins < 1) throw ParameterError("k_bins must be >= 1");

  const RandomSource root(config.seed);
  const Learner& learner = *config.base_learner;
  const IndexList& minority = data.minority_indices();
  const IndexList& majority = data.majority_indices();
  const std::size_t n = config.n_estimators;

  FitResult result;
  TrainingReport& report = result.report;
  report.method = "spe";

  std::vector<ClassifierPtr> trained;  // f_0 .. f_n
  trained.reserve(n + 1);
  {
    RandomSource rng = root.derive("undersample", 0);
    const SampleDraw draw = random_undersample(data, rng);
    report.used_replacement |= draw.with_replacement;
    const IndexList rows = concat(minority, draw.indices);
    report.subset_sizes.push_back(rows.size());
    trained.push_back(train_member(learner, data, rows, root.derive("learner", 0), "spe model 0"));
  }

  // Running sum of member scores on the majority rows; divided by the member
  // count it is exactly the partial ensemble's mean.
  std::vector<double> score_sum = trained.back()->predict_rows(data, majority);
  std::vector<HardnessValue> hardness(majority.size());

  for (std::size_t i = 1; i <= n; ++i) {
    const double members = static_cast<double>(i);
    for (std::size_t r = 0; r < majority.size(); ++r)
      hardness[r] = {majority[r], hardness_of(config.hardness, score_sum[r] / members, 0)};

    const BinPartition bins = partition_bins(hardness, config.k_bins);
    const double alpha = self_paced_alpha(i, n, config.alpha_cap);
    const auto weights = bin_sampling_weights(bins, alpha);
    RandomSource rng = root.derive("spe.sample", i);
    const SampleDraw draw = self_paced_undersample(bins, weights, minority.size(), rng);
    report.used_replacement |= draw.with_replacement;

    const IndexList rows = concat(minority, draw.indices);
    SpeIteration it;
    it.iteration = i;
    it.alpha = alpha;
    it.edges = bins.edges;
    it.bin_sizes = bins.sizes();
    it.mean_hardness = bins.mean_hardness;
    it.weights = weights;
    it.quotas = draw.quotas;
    it.subset_minority = minority.size();
    it.subset_majority = draw.indices.size();
    it.with_replacement = draw.with_replacement;
    if (hooks.on_spe_iteration) hooks.on_spe_iteration(it);
    report.spe_iterations.push_back(std::move(it));
    report.subset_sizes.push_back(rows.size());

    trained.push_back(train_member(learner, data, rows, root.derive("learner", i),
                                   "spe iteration " + std::to_string(i)));
    if (hooks.on_member) hooks.on_member(std::span<const ClassifierPtr>(trained).subspan(1));
    if (i < n) {
      const auto s = trained.back()->predict_rows(data, majority);
      for (std::size_t r = 0; r < s.size(); ++r) score_sum[r] += s[r];
    }
  }

  report.learners_trained = trained.size();
  ModelMetadata meta{"spe",
                     {{"n_estimators", n},
                      {"k_bins", config.k_bins},
                      {"hardness", to_string(config.hardness)},
                      {"alpha_cap", config.alpha_cap},
                      {"base_learner", learner_json(config.base_learner)}},
                     config.seed};
  result.model = EnsembleModel(std::vector<ClassifierPtr>(trained.begin() + 1, trained.end()),
                               std::move(meta));
  return result;
}

FitResult easy_fit(const Dataset& data, const EasyConfig& config, const TrainingHooks& hooks) {
  require_both_classes(data);
  require_learner(config.base_learner);
  if (config.n_estimators < 1) throw ParameterError("n_estimators must be >= 1");

  const RandomSource root(config.seed);
  FitResult result;
  result.report.method = "easy";
  std::vector<ClassifierPtr> members;
  for (std::size_t i = 0; i < config.n_estimators; ++i) {
    RandomSource rng = root.derive("undersample", i);
    const SampleDraw draw = random_undersample(data, rng);
    result.report.used_replacement |= draw.with_replacement;
    const IndexList rows = concat(data.minority_indices(), draw.indices);
    result.report.subset_sizes.push_back(rows.size());
    members.push_back(train_member(*config.base_learner, data, rows, root.derive("learner", i),
                                   "easy member " + std::to_string(i)));
    if (hooks.on_member) hooks.on_member(members);
  }
  result.report.learners_trained = members.size();
  ModelMetadata meta{"easy",
                     {{"n_estimators", config.n_estimators},
                      {"base_learner", learner_json(config.base_learner)}},
                     config.seed};
  result.model = EnsembleModel(std::move(members), std::move(meta));
  return result;
}

double default_keep_fp_rate(std::size_t n_minority, std::size_t n_majority,
                            std::size_t n_estimators) {
  if (n_estimators < 2 || n_majority == 0) return 1.0;
  const double r = static_cast<double>(n_minority) / static_cast<double>(n_majority);
  return std::min(1.0, std::pow(r, 1.0 / static_cast<double>(n_estimators - 1)));
}

FitResult cascade_fit(const Dataset& data, const CascadeConfig& config, const TrainingHooks& hooks) {
  require_both_classes(data);
  require_learner(config.base_learner);
  if (config.n_estimators < 1) throw ParameterError("n_estimators must be >= 1");
  const double keep = config.keep_fp_rate.value_or(
      default_keep_fp_rate(data.n_minority(), data.n_majority(), config.n_estimators));
  if (!(keep > 0.0 && keep <= 1.0)) throw ParameterError("keep_fp_rate must lie in (0, 1]");

  const RandomSource root(config.seed);
  const std::size_t target = data.n_minority();
  FitResult result;
  result.report.method = "cascade";
  std::vector<ClassifierPtr> members;
  IndexList pool = data.majority_indices();
  std::vector<double> score_sum(data.n_rows(), 0.0);

  for (std::size_t i = 0; i < config.n_estimators; ++i) {
    if (pool.size() < target) break;
    result.report.pool_sizes.push_back(pool.size());
    RandomSource rng = root.derive("undersample", i);
    const SampleDraw draw = random_undersample(pool, target, rng);
    const IndexList rows = concat(data.minority_indices(), draw.indices);
    result.report.subset_sizes.push_back(rows.size());
    members.push_back(train_member(*config.base_learner, data, rows, root.derive("learner", i),
                                   "cascade iteration " + std::to_string(i)));
    if (hooks.on_member) hooks.on_member(members);

    if (i + 1 == config.n_estimators || keep >= 1.0) continue;
    const auto s = members.back()->predict_rows(data, pool);
    for (std::size_t r = 0; r < pool.size(); ++r) score_sum[pool[r]] += s[r];
    const auto kept = static_cast<std::size_t>(std::ceil(keep * static_cast<double>(pool.size())));
    // Highest current-ensemble score first; the most confidently rejected
    // majority rows fall off the end.
    std::stable_sort(pool.begin(), pool.end(),
                     [&](std::size_t a, std::size_t b) { return score_sum[a] > score_sum[b]; });
    pool.resize(std::min(kept, pool.size()));
    std::sort(pool.begin(), pool.end());
  }

  result.report.learners_trained = members.size();
  ModelMetadata meta{"cascade",
                     {{"n_estimators", config.n_estimators},
                      {"keep_fp_rate", keep},
                      {"base_learner", learner_json(config.base_learner)}},
                     config.seed};
  result.model = EnsembleModel(std::move(members), std::move(meta));
  return result;
}

std::string_view to_string(Method m) { return kMethodNames[static_cast<std::size_t>(m)]; }

Method method_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kMethodNames.size(); ++i)
    if (kMethodNames[i] == name) return static_cast<Method>(i);
  throw ParameterError("unknown method \"" + std::string(name) +
                       "\" (valid: spe, easy, cascade, rand-under, rand-over, none)");
}

void MethodConfig::validate() const {
  if (n_estimators < 1) throw ParameterError("n_estimators must be >= 1");
  if (k_bins < 1) throw ParameterError("k_bins must be >= 1");
  if (!(alpha_cap > 0.0)) throw ParameterError("alpha_cap must be positive");
  if (keep_fp_rate && !(*keep_fp_rate > 0.0 && *keep_fp_rate <= 1.0))
    throw ParameterError("keep_fp_rate must lie in (0, 1]");
  learner.make();
}

Json MethodConfig::to_json() const {
  Json j{{"method", to_string(method)},
         {"n_estimators", n_estimators},
         {"k_bins", k_bins},
         {"hardness", to_string(hardness)},
         {"alpha_cap", alpha_cap},
         {"base_learner", learner.to_json()},
         {"seed", seed}};
  j["keep_fp_rate"] = keep_fp_rate ? Json(*keep_fp_rate) : Json(nullptr);
  return j;
}

FitResult fit_method(const Dataset& data, const MethodConfig& config, const TrainingHooks& hooks) {
  config.validate();
  const LearnerPtr learner = config.learner.make();
  switch (config.method) {
    case Method::Spe:
      return spe_fit(data, {config.n_estimators, config.k_bins, config.hardness, config.alpha_cap,
                            learner, config.seed},
                     hooks);
    case Method::Easy: return easy_fit(data, {config.n_estimators, learner, config.seed}, hooks);
    case Method::Cascade:
      return cascade_fit(data, {config.n_estimators, config.keep_fp_rate, learner, config.seed},
                         hooks);
    case Method::RandUnder:
    case Method::RandOver:
    case Method::None: break;
  }

  require_both_classes(data);
  const RandomSource root(config.seed);
  RandomSource rng = root.derive("undersample", 0);
  FitResult result;
  result.report.method = std::string(to_string(config.method));
  IndexList rows;
  if (config.method == Method::RandUnder) {
    const SampleDraw draw = random_undersample(data, rng);
    result.report.used_replacement = draw.with_replacement;
    rows = concat(data.minority_indices(), draw.indices);
  } else if (config.method == Method::RandOver) {
    rng = root.derive("oversample", 0);
    const SampleDraw draw = random_oversample(data, rng);
    result.report.used_replacement = draw.with_replacement;
    rows = concat(draw.indices, data.majority_indices());
  } else {
    rows.resize(data.n_rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  }
  result.report.subset_sizes.push_back(rows.size());
  std::vector<ClassifierPtr> members{train_member(*learner, data, rows, root.derive("learner", 0),
                                                  std::string(to_string(config.method)))};
  if (hooks.on_member) hooks.on_member(members);
  result.report.learners_trained = 1;
  ModelMetadata meta{std::string(to_string(config.method)),
                     {{"base_learner", learner_json(learner)}},
                     config.seed};
  result.model = EnsembleModel(std::move(members), std::move(meta));
  return result;
}

}  // namespace spe
