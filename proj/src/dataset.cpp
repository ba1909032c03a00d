#include "spe/dataset.hpp"

#include "spe/errors.hpp"

namespace spe {

Dataset::Dataset(std::vector<double> features, std::size_t n_features, std::vector<Label> labels,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      n_features_(n_features),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)) {
  if (n_features_ == 0 && !labels_.empty())
    throw InvalidInputError("dataset has rows but no feature columns");
  if (features_.size() != labels_.size() * n_features_)
    throw InvalidInputError("feature matrix size " + std::to_string(features_.size()) +
                            " does not match " + std::to_string(labels_.size()) + " rows x " +
                            std::to_string(n_features_) + " columns");
  if (!feature_names_.empty() && feature_names_.size() != n_features_)
    throw InvalidInputError("feature name count does not match column count");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    switch (labels_[i]) {
      case 0: majority_.push_back(i); break;
      case 1: minority_.push_back(i); break;
      default:
        throw InvalidInputError("label at row " + std::to_string(i) + " is not 0 or 1");
    }
  }
}

double Dataset::imbalance_ratio() const {
  if (minority_.empty()) throw InvalidInputError("imbalance ratio undefined: no minority rows");
  return static_cast<double>(majority_.size()) / static_cast<double>(minority_.size());
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> f;
  f.reserve(rows.size() * n_features_);
  std::vector<Label> y;
  y.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= n_rows()) throw RangeError("subset row " + std::to_string(r) + " out of range");
    auto src = row(r);
    f.insert(f.end(), src.begin(), src.end());
    y.push_back(labels_[r]);
  }
  return Dataset(std::move(f), n_features_, std::move(y), feature_names_);
}

Dataset Dataset::with_features(std::vector<double> features) const {
  return Dataset(std::move(features), n_features_, labels_, feature_names_);
}

IndexList concat(const IndexList& a, const IndexList& b) {
  IndexList out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace spe
