#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spe {

using Label = std::uint8_t;
using IndexList = std::vector<std::size_t>;

/// Dense feature matrix (row-major) with binary labels. 1 is the minority
/// (positive) class, 0 the majority (negative) class.
class Dataset {
public:
  Dataset() = default;

  /// `features` is row-major with `labels.size()` rows and `n_features`
  /// columns. Throws InvalidInputError when the shapes disagree or a label
  /// is outside {0, 1}.
  Dataset(std::vector<double> features, std::size_t n_features, std::vector<Label> labels,
          std::vector<std::string> feature_names = {});

  std::size_t n_rows() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return n_features_; }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {features_.data() + i * n_features_, n_features_};
  }
  double at(std::size_t i, std::size_t j) const { return features_[i * n_features_ + j]; }
  Label label(std::size_t i) const { return labels_[i]; }

  const std::vector<double>& features() const noexcept { return features_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

  const IndexList& minority_indices() const noexcept { return minority_; }
  const IndexList& majority_indices() const noexcept { return majority_; }
  std::size_t n_minority() const noexcept { return minority_.size(); }
  std::size_t n_majority() const noexcept { return majority_.size(); }
  bool has_both_classes() const noexcept { return !minority_.empty() && !majority_.empty(); }

  /// |majority| / |minority|. Throws InvalidInputError without minority rows.
  double imbalance_ratio() const;

  /// New dataset holding the given rows, in the given order. Repeats allowed.
  Dataset subset(std::span<const std::size_t> rows) const;

  /// Copy with the feature matrix replaced (same shape). Used by corruption.
  Dataset with_features(std::vector<double> features) const;

private:
  std::vector<double> features_;
  std::size_t n_features_ = 0;
  std::vector<Label> labels_;
  std::vector<std::string> feature_names_;
  IndexList minority_;
  IndexList majority_;
};

/// Concatenation of two index lists, used to assemble training subsets.
IndexList concat(const IndexList& a, const IndexList& b);

}  // namespace spe
