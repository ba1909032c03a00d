#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spe/classifier.hpp"

namespace spe {

/// Mean of a contiguous prefix of trained members. Does not own the members;
/// the backing sequence must outlive the view.
class EnsembleView : public Scorer {
public:
  explicit EnsembleView(std::span<const ClassifierPtr> members);

  std::size_t size() const noexcept { return members_.size(); }
  std::size_t n_features() const override;
  double predict_proba(std::span<const double> x) const override;
  using Scorer::predict_rows;
  void predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                    std::span<double> out) const override;

private:
  std::span<const ClassifierPtr> members_;
};

/// Scorer averaging the first `upto` members. Throws RangeError unless
/// 1 <= upto <= members.size().
EnsembleView partial_ensemble(std::span<const ClassifierPtr> members, std::size_t upto);

struct ModelMetadata {
  std::string method;
  Json config = Json::object();
  std::uint64_t seed = 0;
};

/// Trained ensemble; its score is the arithmetic mean of member scores.
class EnsembleModel : public Scorer {
public:
  EnsembleModel() = default;
  EnsembleModel(std::vector<ClassifierPtr> members, ModelMetadata metadata);

  const std::vector<ClassifierPtr>& members() const noexcept { return members_; }
  const ModelMetadata& metadata() const noexcept { return metadata_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::size_t n_features() const override;
  double predict_proba(std::span<const double> x) const override;
  using Scorer::predict_rows;
  void predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                    std::span<double> out) const override;

  EnsembleView view() const { return EnsembleView(members_); }

  Json to_json() const;
  static EnsembleModel from_json(const Json& doc);

private:
  void require_members() const;

  std::vector<ClassifierPtr> members_;
  ModelMetadata metadata_;
};

/// Convenience free function mirroring EnsembleModel::predict_proba.
double ensemble_predict(const EnsembleModel& model, std::span<const double> x);

}  // namespace spe
