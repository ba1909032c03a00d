#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spe/ensemble_model.hpp"
#include "spe/hardness.hpp"
#include "spe/learners.hpp"
#include "spe/sampling.hpp"

namespace spe {

struct SpeConfig {
  std::size_t n_estimators = 10;
  std::size_t k_bins = 20;
  HardnessFunction hardness = HardnessFunction::AbsoluteError;
  double alpha_cap = kDefaultAlphaCap;
  LearnerPtr base_learner = std::make_shared<TreeLearner>(DecisionTreeParams{});
  std::uint64_t seed = 0;
};

struct EasyConfig {
  std::size_t n_estimators = 10;
  LearnerPtr base_learner = std::make_shared<TreeLearner>(DecisionTreeParams{});
  std::uint64_t seed = 0;
};

struct CascadeConfig {
  std::size_t n_estimators = 10;
  /// Fraction of the majority pool kept after each iteration. Defaults to
  /// (|P| / |N|)^(1 / (n - 1)), which shrinks the pool to about |P| by the
  /// last iteration.
  std::optional<double> keep_fp_rate;
  LearnerPtr base_learner = std::make_shared<TreeLearner>(DecisionTreeParams{});
  std::uint64_t seed = 0;
};

/// One SPE loop iteration, as seen by the instrumentation hook.
struct SpeIteration {
  std::size_t iteration = 0;  // 1-based
  double alpha = 0.0;
  std::vector<double> edges;
  std::vector<std::size_t> bin_sizes;
  std::vector<double> mean_hardness;  // NaN for empty bins
  std::vector<double> weights;
  std::vector<std::size_t> quotas;
  std::size_t subset_minority = 0;
  std::size_t subset_majority = 0;
  bool with_replacement = false;
};

struct TrainingHooks {
  std::function<void(const SpeIteration&)> on_spe_iteration;
  /// Called whenever the returned ensemble gains a member, with the members
  /// trained so far (f_0 of SPE is not part of the returned ensemble).
  std::function<void(std::span<const ClassifierPtr>)> on_member;
};

struct TrainingReport {
  std::string method;
  std::size_t learners_trained = 0;
  std::vector<SpeIteration> spe_iterations;
  std::vector<std::size_t> subset_sizes;  // rows in each training subset
  std::vector<std::size_t> pool_sizes;    // cascade only
  bool used_replacement = false;

  Json to_json() const;
};

struct FitResult {
  EnsembleModel model;
  TrainingReport report;
};

/// Self-paced Ensemble. Trains a bootstrap model on a random balanced subset,
/// then n models on self-paced under-samples guided by the hardness of the
/// majority rows under the running ensemble. The bootstrap model drives the
/// first iteration's hardness but is excluded from the returned ensemble.
FitResult spe_fit(const Dataset& data, const SpeConfig& config, const TrainingHooks& hooks = {});

/// Balanced bagging: n learners on independent random under-samples.
FitResult easy_fit(const Dataset& data, const EasyConfig& config, const TrainingHooks& hooks = {});

/// BalanceCascade: after each learner, the majority pool keeps only its
/// ceil(keep_fp_rate * |pool|) highest-scoring rows under the current
/// ensemble. Stops early once the pool is smaller than |P|.
FitResult cascade_fit(const Dataset& data, const CascadeConfig& config,
                      const TrainingHooks& hooks = {});

double default_keep_fp_rate(std::size_t n_minority, std::size_t n_majority, std::size_t n_estimators);

enum class Method { Spe, Easy, Cascade, RandUnder, RandOver, None };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name);
inline constexpr std::array<std::string_view, 6> kMethodNames = {"spe",       "easy",     "cascade",
                                                                 "rand-under", "rand-over", "none"};

/// Union of every method's knobs; fields a method does not use are ignored.
struct MethodConfig {
  Method method = Method::Spe;
  std::size_t n_estimators = 10;
  std::size_t k_bins = 20;
  HardnessFunction hardness = HardnessFunction::AbsoluteError;
  double alpha_cap = kDefaultAlphaCap;
  std::optional<double> keep_fp_rate;
  LearnerSpec learner;
  std::uint64_t seed = 0;

  void validate() const;
  Json to_json() const;
};

/// Dispatches to the method's training routine. rand-under, rand-over and
/// none train a single learner on the resampled (or raw) data.
FitResult fit_method(const Dataset& data, const MethodConfig& config, const TrainingHooks& hooks = {});

}  // namespace spe
