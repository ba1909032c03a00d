#include "spe/hardness.hpp"

#include <algorithm>
#include <cmath>

#include "spe/errors.hpp"

namespace spe {

std::string_view to_string(HardnessFunction fn) {
  switch (fn) {
    case HardnessFunction::AbsoluteError: return "absolute";
    case HardnessFunction::SquaredError: return "squared";
    case HardnessFunction::CrossEntropy: return "cross-entropy";
  }
  return "unknown";
}

HardnessFunction hardness_from_string(std::string_view name) {
  if (name == "absolute") return HardnessFunction::AbsoluteError;
  if (name == "squared") return HardnessFunction::SquaredError;
  if (name == "cross-entropy") return HardnessFunction::CrossEntropy;
  throw ParameterError("unknown hardness \"" + std::string(name) +
                       "\" (valid: absolute, squared, cross-entropy)");
}

double hardness_of(HardnessFunction fn, double p, Label y) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("probability " + std::to_string(p) + " outside [0, 1]");
  if (y > 1) throw RangeError("label must be 0 or 1");
  const double target = y;
  switch (fn) {
    case HardnessFunction::AbsoluteError: return std::abs(p - target);
    case HardnessFunction::SquaredError: return (p - target) * (p - target);
    case HardnessFunction::CrossEntropy: {
      const double q = std::clamp(p, kCrossEntropyEpsilon, 1.0 - kCrossEntropyEpsilon);
      return y ? -std::log(q) : -std::log(1.0 - q);
    }
  }
  throw ParameterError("unknown hardness function");
}

std::vector<HardnessValue> hardness_over_majority(const Dataset& data, const Scorer& scorer,
                                                  HardnessFunction fn) {
  const auto& rows = data.majority_indices();
  const auto scores = scorer.predict_rows(data, rows);
  std::vector<HardnessValue> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.push_back({rows[i], hardness_of(fn, scores[i], data.label(rows[i]))});
  return out;
}

}  // namespace spe
