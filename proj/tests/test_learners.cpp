#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "spe/adaboost.hpp"
#include "spe/errors.hpp"
#include "spe/external_learner.hpp"
#include "spe/learners.hpp"
#include "spe/random.hpp"
#include "support.hpp"

using namespace spe;
using spe::test::one_feature;

namespace {

DecisionTreeParams depth(int d) {
  DecisionTreeParams p;
  p.max_depth = d;
  return p;
}

double accuracy(const Scorer& s, const Dataset& d) {
  std::size_t ok = 0;
  for (std::size_t i = 0; i < d.n_rows(); ++i) ok += (s.predict_proba(d.row(i)) >= 0.5) == (d.label(i) == 1);
  return static_cast<double>(ok) / static_cast<double>(d.n_rows());
}

// Unweighted Gini of a label multiset, straight from the definition.
double gini_of(const std::vector<Label>& ys) {
  if (ys.empty()) return 0.0;
  double pos = 0;
  for (auto y : ys) pos += y;
  const double p = pos / static_cast<double>(ys.size());
  return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

// Weighted child impurity of every midpoint split of a 1-D dataset.
std::vector<std::pair<double, double>> brute_force_splits(const std::vector<double>& x,
                                                          const std::vector<Label>& y) {
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const double t = (sorted[i] + sorted[i + 1]) / 2;
    std::vector<Label> l, r;
    for (std::size_t j = 0; j < x.size(); ++j) (x[j] <= t ? l : r).push_back(y[j]);
    const double n = static_cast<double>(x.size());
    out.emplace_back(t, (l.size() / n) * gini_of(l) + (r.size() / n) * gini_of(r));
  }
  return out;
}

Dataset random_dataset(RandomSource& rng, std::size_t n, std::size_t f) {
  std::vector<double> x(n * f);
  std::vector<Label> y(n);
  for (double& v : x) v = std::round(rng.uniform01() * 50) / 10;
  for (auto& v : y) v = rng.uniform01() < 0.3 ? 1 : 0;
  y[0] = 1;
  y[1] = 0;
  return Dataset(std::move(x), f, std::move(y));
}

}  // namespace

TEST_CASE("tree: separable data, depth 1") {
  const Dataset d = one_feature({1, 2, 3, 4}, {0, 0, 1, 1});
  const DecisionTree t = DecisionTree::fit(d, depth(1));
  REQUIRE(t.nodes().size() == 3);
  const auto& root = t.nodes()[0];
  CHECK(root.feature == 0);
  CHECK(root.threshold >= 2.0);
  CHECK(root.threshold < 3.0);
  CHECK(t.nodes()[root.left].probability == 0.0);
  CHECK(t.nodes()[root.right].probability == 1.0);
  CHECK(accuracy(t, d) == 1.0);
  const std::vector<double> x = {1.5};
  CHECK(t.predict_proba(x) == 0.0);
}

TEST_CASE("tree: pure data is a single leaf") {
  const DecisionTree pos = DecisionTree::fit(one_feature({1, 2, 3}, {1, 1, 1}), depth(5));
  CHECK(pos.nodes().size() == 1);
  CHECK(pos.nodes()[0].probability == 1.0);
  const DecisionTree neg = DecisionTree::fit(one_feature({1, 2, 3}, {0, 0, 0}), depth(5));
  CHECK(neg.nodes().size() == 1);
  CHECK(neg.nodes()[0].probability == 0.0);
}

TEST_CASE("tree: alternating labels pick the best brute-force split") {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<Label> y = {0, 1, 0, 1};
  const auto splits = brute_force_splits(x, y);
  double best = std::numeric_limits<double>::infinity();
  double best_t = 0;
  for (auto [t, g] : splits)
    if (g < best - 1e-15) best = g, best_t = t;
  CHECK(best == doctest::Approx(1.0 / 3.0));
  CHECK(gini_of(y) == 0.5);

  const DecisionTree tree = DecisionTree::fit(one_feature(x, y), depth(1));
  const auto& root = tree.nodes()[0];
  REQUIRE_FALSE(root.is_leaf());
  CHECK(root.threshold == best_t);
  const auto& l = tree.nodes()[root.left];
  const auto& r = tree.nodes()[root.right];
  const double impurity = (l.samples / 4.0) * gini(l.probability, 1 - l.probability) * 1.0 +
                          (r.samples / 4.0) * gini(r.probability, 1 - r.probability);
  CHECK(impurity == doctest::Approx(best));
}

TEST_CASE("tree: leaf probability is the positive fraction") {
  const DecisionTree t = DecisionTree::fit(one_feature({2, 2, 2, 2}, {1, 1, 1, 0}), depth(3));
  REQUIRE(t.nodes().size() == 1);
  const std::vector<double> x = {2};
  CHECK(t.predict_proba(x) == 0.75);
  CHECK(t.nodes()[0].samples == 4);

  const std::vector<double> w = {1, 1, 1, 3};
  const DecisionTree weighted = DecisionTree::fit(one_feature({2, 2, 2, 2}, {1, 1, 1, 0}), w, depth(3));
  CHECK(weighted.predict_proba(x) == 0.5);
}

TEST_CASE("tree: routing uses <= threshold and checks arity") {
  const DecisionTree t({{0, 2.5, 1, 2, 0.0, 4}, {-1, 0, -1, -1, 0.25, 2}, {-1, 0, -1, -1, 0.8, 2}}, 1);
  const std::vector<double> at = {2.5}, above = {2.5000001}, two = {1, 2};
  CHECK(t.predict_proba(at) == 0.25);
  CHECK(t.predict_proba(above) == 0.8);
  CHECK_THROWS_AS(t.predict_proba(two), DimensionError);
}

TEST_CASE("tree: errors and parameter validation") {
  CHECK_THROWS_AS(DecisionTree::fit(Dataset(), depth(2)), InvalidInputError);
  CHECK_THROWS_AS(DecisionTree::fit(one_feature({1, 2}, {0, 1}), depth(0)), ParameterError);
  const std::vector<double> zero = {0, 0};
  CHECK_THROWS_AS(DecisionTree::fit(one_feature({1, 2}, {0, 1}), zero, depth(2)), InvalidInputError);
  CHECK_THROWS_AS(DecisionTree({{-1, 0, -1, -1, 1.5, 1}}, 1), InvalidModelError);
}

TEST_CASE("tree: impurity never rises above the root") {
  RandomSource rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset d = random_dataset(rng, 60, 3);
    const DecisionTree t = DecisionTree::fit(d, depth(1 + static_cast<int>(rng.uniform_index(6))));
    double pos = 0;
    for (auto y : d.labels()) pos += y;
    const double root = gini(pos, d.n_rows() - pos) ;
    double leaves = 0;
    for (const auto& n : t.nodes())
      if (n.is_leaf()) leaves += (n.samples / double(d.n_rows())) * gini(n.probability, 1 - n.probability);
    CHECK(leaves <= root + 1e-12);
  }
}

TEST_CASE("tree: unlimited depth fits distinct points exactly") {
  RandomSource rng(11);
  std::vector<double> x(200);
  std::vector<Label> y(100);
  for (double& v : x) v = rng.uniform01();
  for (auto& v : y) v = rng.uniform01() < 0.5;
  const Dataset d(std::move(x), 2, std::move(y));
  CHECK(accuracy(DecisionTree::fit(d, depth(1000)), d) == 1.0);
}

TEST_CASE("tree: JSON round trip keeps every bit") {
  RandomSource rng(5);
  std::vector<double> x(300);
  std::vector<Label> y(100);
  for (double& v : x) v = rng.normal() / 3.0;
  for (auto& v : y) v = rng.uniform01() < 0.4;
  const Dataset d(std::move(x), 3, std::move(y));
  const DecisionTree t = DecisionTree::fit(d, depth(6));
  const DecisionTree back = DecisionTree::from_json(Json::parse(t.to_json().dump()));
  REQUIRE(back.nodes().size() == t.nodes().size());
  for (std::size_t i = 0; i < t.nodes().size(); ++i) {
    CHECK(back.nodes()[i].threshold == t.nodes()[i].threshold);
    if (t.nodes()[i].is_leaf()) CHECK(back.nodes()[i].probability == t.nodes()[i].probability);
  }
  const ClassifierPtr generic = classifier_from_json(t.to_json());
  for (std::size_t i = 0; i < d.n_rows(); ++i) CHECK(generic->predict_proba(d.row(i)) == t.predict_proba(d.row(i)));
}

TEST_CASE("adaboost: stage weight and probability map") {
  CHECK(adaboost_stage_weight(0.25, 1.0) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-15));
  CHECK(adaboost_stage_weight(0.25, 1.0) == doctest::Approx(0.5493).epsilon(1e-4));
  CHECK(adaboost_stage_weight(0.25, 0.5) == doctest::Approx(0.25 * std::log(3.0)));
  CHECK(adaboost_stage_weight(0.0, 1.0) == doctest::Approx(0.5 * std::log(1e10)));
  CHECK(adaboost_margin_to_proba(0.0) == 0.5);
  CHECK(adaboost_margin_to_proba(1.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
  CHECK(adaboost_margin_to_proba(-1.0) == doctest::Approx(1.0 / (1.0 + std::exp(2.0))));
}

TEST_CASE("adaboost: first round error 0.25 under uniform weights") {
  const Dataset d = one_feature({1, 2, 3, 4}, {0, 0, 1, 0});
  std::vector<AdaBoostRound> trace;
  AdaBoostParams p;
  p.n_estimators = 1;
  adaboost_fit(d, p, &trace);
  REQUIRE(trace.size() == 1);
  CHECK(trace[0].error == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(trace[0].stage_weight == doctest::Approx(0.5 * std::log(3.0)));
}

TEST_CASE("adaboost: one round on separable data equals a stump") {
  const Dataset d = one_feature({1, 2, 3, 4, 5, 6}, {0, 0, 0, 1, 1, 1});
  AdaBoostParams p;
  p.n_estimators = 1;
  const AdaBoostModel boosted = adaboost_fit(d, p);
  const DecisionTree stump = DecisionTree::fit(d, depth(1));
  for (double v = 0.0; v <= 7.0; v += 0.25) {
    const std::vector<double> x = {v};
    CHECK((boosted.predict_proba(x) >= 0.5) == (stump.predict_proba(x) >= 0.5));
  }
}

TEST_CASE("adaboost: vote map") {
  const DecisionTree yes({{-1, 0, -1, -1, 1.0, 1}}, 1);
  const DecisionTree no({{-1, 0, -1, -1, 0.0, 1}}, 1);
  const std::vector<double> x = {0};
  CHECK(AdaBoostModel({{0.7, yes}, {0.2, yes}}).predict_proba(x) > 0.5);
  CHECK(AdaBoostModel({{0.4, yes}, {0.4, no}}).predict_proba(x) == 0.5);
  CHECK(AdaBoostModel({{0.123, yes}}).predict_proba(x) == adaboost_margin_to_proba(1.0));
  CHECK_THROWS_AS(AdaBoostModel({}), InvalidModelError);
}

TEST_CASE("adaboost: weights stay normalized and training error respects the boosting bound") {
  RandomSource rng(21);
  std::vector<double> x;
  std::vector<Label> y;
  for (int i = 0; i < 200; ++i) {
    const double a = rng.uniform01(), b = rng.uniform01();
    x.push_back(a);
    x.push_back(b);
    y.push_back(a > 0.3 && b > 0.6 ? 1 : 0);
  }
  const Dataset d(std::move(x), 2, std::move(y));
  std::vector<AdaBoostRound> trace;
  AdaBoostParams p;
  p.n_estimators = 20;
  adaboost_fit(d, p, &trace);
  REQUIRE(!trace.empty());
  double bound = 1.0;
  for (const auto& round : trace) {
    CHECK(std::abs(round.weight_sum_after - 1.0) <= 1e-12);
    bound *= 2.0 * std::sqrt(round.error * (1.0 - round.error));
    CHECK(round.training_error <= bound + 1e-12);
  }
}

TEST_CASE("adaboost: training error does not rise on threshold-separable data") {
  RandomSource rng(22);
  std::vector<double> x(150);
  std::vector<Label> y(150);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.uniform01();
    y[i] = x[i] > 0.42;
  }
  std::vector<AdaBoostRound> trace;
  AdaBoostParams p;
  p.n_estimators = 10;
  adaboost_fit(one_feature(x, y), p, &trace);
  REQUIRE(trace.size() == 10);
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i].training_error <= trace[i - 1].training_error);
  CHECK(trace.back().training_error == 0.0);
}

TEST_CASE("adaboost: errors and JSON") {
  CHECK_THROWS_AS(adaboost_fit(one_feature({1, 2}, {0, 0}), AdaBoostParams{}), InvalidInputError);
  const Dataset d = one_feature({1, 2, 3, 4, 5, 6, 7}, {0, 1, 0, 1, 1, 0, 1});
  const AdaBoostModel m = adaboost_fit(d, AdaBoostParams{5, 2, 0.5});
  const ClassifierPtr back = classifier_from_json(Json::parse(m.to_json().dump()));
  for (std::size_t i = 0; i < d.n_rows(); ++i) CHECK(back->predict_proba(d.row(i)) == m.predict_proba(d.row(i)));
}

TEST_CASE("learner specs") {
  LearnerSpec s;
  CHECK(s.make()->name() == "tree");
  s.kind = "adaboost";
  CHECK(s.make()->name() == "adaboost");
  s.kind = "external";
  CHECK_THROWS_AS(s.make(), ParameterError);
  s.kind = "knn";
  CHECK_THROWS_AS(s.make(), ParameterError);
  CHECK_THROWS_AS(classifier_from_json(Json{{"kind", "knn"}}), InvalidModelError);
  CHECK_THROWS_AS(classifier_from_json(Json::object()), InvalidModelError);
}

TEST_CASE("external learner protocol") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "spe-external-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path script = dir / "mean_learner.py";
  {
    std::ofstream os(script);
    os << "#!/usr/bin/env python3\n"
          "import csv, sys\n"
          "if sys.argv[1] == 'fit':\n"
          "    rows = list(csv.DictReader(open(sys.argv[2])))\n"
          "    p = sum(float(r['label']) for r in rows) / len(rows)\n"
          "    open(sys.argv[3], 'w').write(repr(p))\n"
          "else:\n"
          "    p = float(open(sys.argv[2]).read())\n"
          "    n = sum(1 for _ in csv.reader(open(sys.argv[3]))) - 1\n"
          "    open(sys.argv[4], 'w').write(''.join('%r\\n' % p for _ in range(n)))\n";
  }
  fs::permissions(script, fs::perms::owner_all);

  const Dataset d = one_feature({1, 2, 3, 4}, {1, 0, 0, 0});
  const ExternalLearner learner(script.string(), dir / "models");
  const ClassifierPtr model = learner.fit(d, RandomSource(1));
  const std::vector<double> x = {9};
  CHECK(model->predict_proba(x) == 0.25);
  const auto all = model->predict_all(d);
  CHECK(all == std::vector<double>(4, 0.25));
  CHECK(classifier_from_json(model->to_json())->predict_proba(x) == 0.25);

  const ExternalLearner broken((dir / "missing.py").string(), dir / "models");
  CHECK_THROWS_AS(broken.fit(d, RandomSource(1)), InvalidModelError);
  fs::remove_all(dir);
}
