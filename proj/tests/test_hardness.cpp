#include <doctest.h>

#include <cmath>

#include "spe/errors.hpp"
#include "spe/hardness.hpp"
#include "support.hpp"

using namespace spe;
using HF = HardnessFunction;

TEST_CASE("hardness formulas") {
  CHECK(hardness_of(HF::AbsoluteError, 0.7, 1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(hardness_of(HF::SquaredError, 0.7, 1) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(hardness_of(HF::CrossEntropy, 0.5, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(hardness_of(HF::CrossEntropy, 0.5, 1) == doctest::Approx(0.693147).epsilon(1e-6));
  CHECK(hardness_of(HF::CrossEntropy, 0.2, 0) == doctest::Approx(-std::log(0.8)));
  // clamped at the saturated extremes
  CHECK(hardness_of(HF::CrossEntropy, 0.0, 1) == doctest::Approx(-std::log(kCrossEntropyEpsilon)));
  CHECK(std::isfinite(hardness_of(HF::CrossEntropy, 1.0, 0)));
}

TEST_CASE("hardness range errors") {
  CHECK_THROWS_AS(hardness_of(HF::AbsoluteError, 1.5, 1), RangeError);
  CHECK_THROWS_AS(hardness_of(HF::SquaredError, -0.1, 0), RangeError);
  CHECK_THROWS_AS(hardness_of(HF::CrossEntropy, std::nan(""), 0), RangeError);
}

TEST_CASE("hardness names") {
  for (auto name : kHardnessNames) CHECK(to_string(hardness_from_string(name)) == name);
  CHECK_THROWS_AS(hardness_from_string("foo"), ParameterError);
}

TEST_CASE("hardness monotonicity and symmetry") {
  for (HF fn : {HF::AbsoluteError, HF::SquaredError, HF::CrossEntropy}) {
    for (int i = 0; i < 100; ++i) {
      const double p = i / 100.0, q = (i + 1) / 100.0;
      CHECK(hardness_of(fn, p, 0) < hardness_of(fn, q, 0));
      CHECK(hardness_of(fn, p, 1) > hardness_of(fn, q, 1));
      CHECK(hardness_of(fn, p, 0) >= 0.0);
    }
  }
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    for (Label y : {Label{0}, Label{1}})
      CHECK(hardness_of(HF::AbsoluteError, p, y) == doctest::Approx(hardness_of(HF::AbsoluteError, 1 - p, 1 - y)));
    CHECK(hardness_of(HF::AbsoluteError, p, 1) <= 1.0);
    CHECK(hardness_of(HF::SquaredError, p, 0) <= 1.0);
  }
}

TEST_CASE("hardness over the majority rows") {
  const Dataset d = test::line_dataset({0, 1, 0, 0, 1});
  const auto zero = hardness_over_majority(d, test::ConstantScorer(0.0), HF::AbsoluteError);
  REQUIRE(zero.size() == d.n_majority());
  for (std::size_t i = 0; i < zero.size(); ++i) {
    CHECK(zero[i].index == d.majority_indices()[i]);
    CHECK(zero[i].value == 0.0);
  }
  for (const auto& h : hardness_over_majority(d, test::ConstantScorer(1.0), HF::AbsoluteError))
    CHECK(h.value == 1.0);

  const Dataset two = test::one_feature({5, 6, 7}, {0, 1, 0});
  const auto sq = hardness_over_majority(two, test::TableScorer({{5, 0.2}, {6, 0.5}, {7, 0.9}}), HF::SquaredError);
  REQUIRE(sq.size() == 2);
  CHECK(sq[0].value == doctest::Approx(0.04));
  CHECK(sq[1].value == doctest::Approx(0.81));
}
