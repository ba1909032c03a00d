#include <doctest.h>

#include <algorithm>
#include <set>

#include "spe/decision_tree.hpp"
#include "spe/ensemble_model.hpp"
#include "spe/errors.hpp"
#include "spe/learners.hpp"
#include "spe/random.hpp"
#include "support.hpp"

using namespace spe;
using spe::test::constant;

namespace {

EnsembleModel model_of(std::vector<double> outputs, std::size_t n_features = 1) {
  std::vector<ClassifierPtr> members;
  for (double p : outputs) members.push_back(constant(p, n_features));
  return EnsembleModel(std::move(members), {});
}

const std::vector<double> x1 = {0.0};

}  // namespace

TEST_CASE("ensemble_predict averages member scores") {
  CHECK(ensemble_predict(model_of({0.6, 0.6, 0.6}), x1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(ensemble_predict(model_of({0.0, 1.0}), x1) == 0.5);
  // (0.2 + 0.3 + 0.7) / 3
  const double expected = (0.2 + 0.3 + 0.7) / 3.0;
  CHECK(ensemble_predict(model_of({0.2, 0.3, 0.7}), x1) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(expected == doctest::Approx(0.4));
}

TEST_CASE("ensemble_predict errors") {
  CHECK_THROWS_AS(ensemble_predict(EnsembleModel({}, {}), x1), InvalidModelError);
  const std::vector<double> x2 = {0.0, 1.0};
  CHECK_THROWS_AS(ensemble_predict(model_of({0.5}), x2), DimensionError);
}

TEST_CASE("partial_ensemble") {
  std::vector<ClassifierPtr> one = {constant(0.37)};
  CHECK(partial_ensemble(one, 1).predict_proba(x1) == 0.37);

  std::vector<ClassifierPtr> two = {constant(0.0), constant(1.0)};
  CHECK(partial_ensemble(two, 2).predict_proba(x1) == 0.5);
  CHECK(partial_ensemble(two, 1).predict_proba(x1) == 0.0);

  std::vector<ClassifierPtr> three = {constant(0.1), constant(0.1), constant(0.4), constant(0.9)};
  CHECK(partial_ensemble(three, 3).predict_proba(x1) == doctest::Approx(0.2).epsilon(1e-15));

  CHECK_THROWS_AS(partial_ensemble(two, 0), RangeError);
  CHECK_THROWS_AS(partial_ensemble(two, 3), RangeError);
}

TEST_CASE("ensemble score lies between member extremes and matches the full partial view") {
  RandomSource rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + rng.uniform_index(12);
    std::vector<double> outputs(m);
    for (double& p : outputs) p = rng.uniform01();
    const EnsembleModel model = model_of(outputs);
    const double s = ensemble_predict(model, x1);
    CHECK(s >= *std::min_element(outputs.begin(), outputs.end()) - 1e-15);
    CHECK(s <= *std::max_element(outputs.begin(), outputs.end()) + 1e-15);
    const double partial = partial_ensemble(model.members(), m).predict_proba(x1);
    CHECK(std::abs(partial - s) <= 1e-12 * static_cast<double>(m));
  }
}

TEST_CASE("RandomSource determinism and derivation") {
  RandomSource a(42), b(42), c(43);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 16; ++i) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
  }
  CHECK(va == vb);
  CHECK(va != vc);

  // Children depend only on the key, not on parent consumption.
  RandomSource parent(5);
  RandomSource early = parent.derive("learner", 3);
  for (int i = 0; i < 100; ++i) parent.next_u64();
  RandomSource late = parent.derive("learner", 3);
  CHECK(early.next_u64() == late.next_u64());

  CHECK(RandomSource(5).derive("learner", 3).seed() != RandomSource(5).derive("learner", 4).seed());
  CHECK(RandomSource(5).derive("learner", 3).seed() != RandomSource(5).derive("undersample", 3).seed());
}

TEST_CASE("RandomSource distributions") {
  RandomSource rng(1);
  std::vector<int> counts(7, 0);
  double sum = 0.0, sumsq = 0.0;
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.uniform_index(7);
    REQUIRE(k < 7);
    ++counts[k];
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  for (int c : counts) CHECK(std::abs(c - n / 7) < 5 * std::sqrt(n / 7.0));
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sumsq / n - 1.0) < 0.03);
}

TEST_CASE("Dataset validation and views") {
  CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, 2, {0, 1}), InvalidInputError);
  CHECK_THROWS_AS(Dataset({1.0, 2.0}, 1, {0, 2}), InvalidInputError);

  const Dataset d({1, 2, 3, 4, 5, 6}, 2, {1, 0, 0}, {"a", "b"});
  CHECK(d.n_rows() == 3);
  CHECK(d.n_features() == 2);
  CHECK(d.at(1, 1) == 4.0);
  CHECK(d.minority_indices() == IndexList{0});
  CHECK(d.majority_indices() == IndexList{1, 2});
  CHECK(d.imbalance_ratio() == 2.0);
  CHECK(d.has_both_classes());

  const std::vector<std::size_t> rows = {2, 0, 2};
  const Dataset s = d.subset(rows);
  CHECK(s.n_rows() == 3);
  CHECK(s.at(0, 0) == 5.0);
  CHECK(s.label(1) == 1);
  CHECK(s.feature_names() == d.feature_names());
  CHECK(concat({1, 2}, {3}) == IndexList{1, 2, 3});
}

TEST_CASE("EnsembleModel JSON round trip is lossless") {
  const Dataset d({0.1, 0.7, 0.25, 0.9, 0.33, 0.05, 0.6, 0.5}, 1, {0, 1, 0, 1, 1, 0, 1, 0});
  std::vector<ClassifierPtr> members;
  members.push_back(std::make_shared<DecisionTree>(DecisionTree::fit(d, DecisionTreeParams{})));
  members.push_back(std::make_shared<DecisionTree>(DecisionTree::fit(d, DecisionTreeParams{1, 2, 0.0})));
  const EnsembleModel model(members, {"spe", Json{{"n_estimators", 2}}, 99});
  const Json doc = model.to_json();
  CHECK(doc["format"] == "spe-ensemble");
  CHECK(doc["members"].size() == 2);

  Json with_extra = Json::parse(doc.dump());
  with_extra["experiment"] = {{"anything", 1}};
  const EnsembleModel back = EnsembleModel::from_json(with_extra);
  CHECK(back.size() == 2);
  CHECK(back.metadata().seed == 99);
  CHECK(back.to_json() == doc);
  for (std::size_t i = 0; i < d.n_rows(); ++i) CHECK(back.predict_proba(d.row(i)) == model.predict_proba(d.row(i)));

  Json bad = doc;
  bad["members"] = Json::array();
  CHECK_THROWS_AS(EnsembleModel::from_json(bad), InvalidModelError);
}
