#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "spe/classifier.hpp"

namespace spe {

/// Per-sample error of a probabilistic prediction.
enum class HardnessFunction { AbsoluteError, SquaredError, CrossEntropy };

/// Probability clamp used by cross-entropy so saturated scorers stay finite.
inline constexpr double kCrossEntropyEpsilon = 1e-12;

/// CLI identifiers: "absolute", "squared", "cross-entropy".
std::string_view to_string(HardnessFunction fn);
HardnessFunction hardness_from_string(std::string_view name);
inline constexpr std::array<std::string_view, 3> kHardnessNames = {"absolute", "squared",
                                                                   "cross-entropy"};

/// Throws RangeError when p is outside [0, 1] or y is not a label.
double hardness_of(HardnessFunction fn, double p, Label y);

struct HardnessValue {
  std::size_t index;  // row of the dataset
  double value;
};

/// Hardness of every majority row of `data` under `scorer`, in the order of
/// data.majority_indices().
std::vector<HardnessValue> hardness_over_majority(const Dataset& data, const Scorer& scorer,
                                                  HardnessFunction fn);

}  // namespace spe
