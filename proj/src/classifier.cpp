#include "spe/classifier.hpp"

#include "spe/errors.hpp"

namespace spe {

void Scorer::predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                          std::span<double> out) const {
  if (rows.size() != out.size()) throw InvalidInputError("predict_rows: output size mismatch");
  check_arity(data.n_features());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = predict_proba(data.row(rows[i]));
}

std::vector<double> Scorer::predict_all(const Dataset& data) const {
  IndexList rows(data.n_rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return predict_rows(data, rows);
}

std::vector<double> Scorer::predict_rows(const Dataset& data,
                                         std::span<const std::size_t> rows) const {
  std::vector<double> out(rows.size());
  predict_rows(data, rows, out);
  return out;
}

void Scorer::check_arity(std::size_t got) const {
  if (got != n_features())
    throw DimensionError("expected " + std::to_string(n_features()) + " features, got " +
                         std::to_string(got));
}

}  // namespace spe
