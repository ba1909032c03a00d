#include "spe/ensemble_model.hpp"

#include "spe/errors.hpp"
#include "spe/learners.hpp"

namespace spe {

EnsembleView::EnsembleView(std::span<const ClassifierPtr> members) : members_(members) {
  if (members_.empty()) throw InvalidModelError("ensemble has no members");
}

std::size_t EnsembleView::n_features() const { return members_.front()->n_features(); }

double EnsembleView::predict_proba(std::span<const double> x) const {
  check_arity(x.size());
  double sum = 0.0;
  for (const auto& m : members_) sum += m->predict_proba(x);
  return sum / static_cast<double>(members_.size());
}

void EnsembleView::predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                                std::span<double> out) const {
  if (rows.size() != out.size()) throw InvalidInputError("predict_rows: output size mismatch");
  check_arity(data.n_features());
  std::vector<double> member_out(rows.size());
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& m : members_) {
    m->predict_rows(data, rows, member_out);
    for (std::size_t i = 0; i < rows.size(); ++i) out[i] += member_out[i];
  }
  const double n = static_cast<double>(members_.size());
  for (double& v : out) v /= n;
}

EnsembleView partial_ensemble(std::span<const ClassifierPtr> members, std::size_t upto) {
  if (upto == 0 || upto > members.size())
    throw RangeError("partial ensemble size " + std::to_string(upto) + " outside [1, " +
                     std::to_string(members.size()) + "]");
  return EnsembleView(members.first(upto));
}

EnsembleModel::EnsembleModel(std::vector<ClassifierPtr> members, ModelMetadata metadata)
    : members_(std::move(members)), metadata_(std::move(metadata)) {
  for (const auto& m : members_) {
    if (!m) throw InvalidModelError("ensemble member is null");
    if (m->n_features() != members_.front()->n_features())
      throw InvalidModelError("ensemble members disagree on feature count");
  }
}

void EnsembleModel::require_members() const {
  if (members_.empty()) throw InvalidModelError("ensemble has no members");
}

std::size_t EnsembleModel::n_features() const {
  require_members();
  return members_.front()->n_features();
}

double EnsembleModel::predict_proba(std::span<const double> x) const {
  require_members();
  return view().predict_proba(x);
}

void EnsembleModel::predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                                 std::span<double> out) const {
  require_members();
  view().predict_rows(data, rows, out);
}

Json EnsembleModel::to_json() const {
  Json members = Json::array();
  for (const auto& m : members_) members.push_back(m->to_json());
  return Json{{"format", "spe-ensemble"},
              {"version", 1},
              {"method", metadata_.method},
              {"config", metadata_.config},
              {"seed", metadata_.seed},
              {"n_features", members_.empty() ? 0 : members_.front()->n_features()},
              {"members", std::move(members)}};
}

EnsembleModel EnsembleModel::from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "spe-ensemble")
      throw InvalidModelError("not an spe-ensemble document");
    ModelMetadata meta;
    meta.method = doc.at("method").get<std::string>();
    meta.config = doc.value("config", Json::object());
    meta.seed = doc.at("seed").get<std::uint64_t>();
    std::vector<ClassifierPtr> members;
    for (const auto& m : doc.at("members")) members.push_back(classifier_from_json(m));
    if (members.empty()) throw InvalidModelError("model document has no members");
    return EnsembleModel(std::move(members), std::move(meta));
  } catch (const Json::exception& e) {
    throw InvalidModelError(std::string("malformed model document: ") + e.what());
  }
}

double ensemble_predict(const EnsembleModel& model, std::span<const double> x) {
  return model.predict_proba(x);
}

}  // namespace spe
