#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "spe/data.hpp"
#include "spe/ensemble_methods.hpp"

namespace spe {

/// Benchmark suites over freshly generated checkerboard data:
///   checkerboard   methods x learners at the base covariance, four metrics
///   overlap-sweep  cov in {0.05, 0.10, 0.15}, AUCPRC
///   missing-sweep  missing ratio in {0, 0.25, 0.5, 0.75} applied to train
///                  and test features, AUCPRC
/// Every repeat draws independent training and test sets.
struct BenchOptions {
  std::string suite = "checkerboard";
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::vector<Method> methods = {Method::RandUnder, Method::Easy, Method::Cascade, Method::Spe};
  /// Empty means the suite default: tree and adaboost for checkerboard, tree
  /// for the sweeps.
  std::vector<LearnerSpec> learners;
  std::size_t n_estimators = 10;
  std::size_t k_bins = 20;
  HardnessFunction hardness = HardnessFunction::AbsoluteError;
  CheckerboardSpec data;  // seed is ignored; each repeat derives its own
  std::function<void(const std::string&)> progress;

  Json to_json() const;
};

struct BenchRow {
  std::string method;
  std::string learner;
  std::string metric;  // sweeps append the setting, e.g. "aucprc@cov=0.05"
  std::vector<double> values;  // one per successful run
  std::vector<std::string> errors;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

struct BenchResult {
  std::vector<BenchRow> rows;
  Json config;

  const BenchRow* find(const std::string& method, const std::string& learner,
                       const std::string& metric) const;
};

inline constexpr std::array<std::string_view, 3> kSuiteNames = {"checkerboard", "overlap-sweep",
                                                                "missing-sweep"};

BenchResult run_bench(const BenchOptions& options);

/// Header method,learner,metric,mean,std.
void write_bench_csv(std::ostream& out, const BenchResult& result);
Json bench_to_json(const BenchResult& result);

/// Default tree (max_depth 10) and adaboost (10 stumps) learner specs.
LearnerSpec default_tree_spec();
LearnerSpec default_adaboost_spec();

}  // namespace spe
