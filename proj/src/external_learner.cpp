#include "spe/external_learner.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spe/data.hpp"
#include "spe/errors.hpp"

namespace spe {

namespace fs = std::filesystem;

namespace {

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

void run(const std::string& cmdline) {
  const int status = std::system(cmdline.c_str());
  if (status != 0)
    throw InvalidModelError("external learner command failed (status " + std::to_string(status) +
                            "): " + cmdline);
}

std::string unique_stem(RandomSource& rng) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng.next_u64()));
  return buf;
}

}  // namespace

ExternalClassifier::ExternalClassifier(std::string command, fs::path model_path,
                                       std::size_t n_features)
    : command_(std::move(command)), model_path_(std::move(model_path)), n_features_(n_features) {
  if (command_.empty()) throw InvalidModelError("external classifier needs a command");
}

double ExternalClassifier::predict_proba(std::span<const double> x) const {
  check_arity(x.size());
  Dataset one(std::vector<double>(x.begin(), x.end()), x.size(), {0});
  const std::size_t row = 0;
  double out = 0.0;
  predict_rows(one, std::span<const std::size_t>(&row, 1), std::span<double>(&out, 1));
  return out;
}

void ExternalClassifier::predict_rows(const Dataset& data, std::span<const std::size_t> rows,
                                      std::span<double> out) const {
  if (rows.size() != out.size()) throw InvalidInputError("predict_rows: output size mismatch");
  check_arity(data.n_features());
  if (rows.empty()) return;
  const fs::path features = fs::path(model_path_).concat(".query.csv");
  const fs::path scores = fs::path(model_path_).concat(".scores.txt");
  {
    std::ofstream os(features);
    if (!os) throw IoError("cannot write " + features.string());
    write_feature_csv(os, data, rows);
  }
  run(quote(command_) + " predict " + quote(model_path_.string()) + " " +
      quote(features.string()) + " " + quote(scores.string()));
  std::ifstream is(scores);
  if (!is) throw IoError("external learner produced no scores file " + scores.string());
  std::string line;
  std::size_t i = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (i >= out.size()) throw InvalidModelError("external learner returned too many scores");
    double p;
    try {
      p = parse_real(line);
    } catch (const ParseError&) {
      throw InvalidModelError("external learner returned a non-numeric score: " + line);
    }
    if (!(p >= 0.0 && p <= 1.0))
      throw InvalidModelError("external learner returned a score outside [0, 1]: " + line);
    out[i++] = p;
  }
  if (i != out.size()) throw InvalidModelError("external learner returned too few scores");
  fs::remove(features);
  fs::remove(scores);
}

Json ExternalClassifier::to_json() const {
  return {{"kind", "external"},
          {"command", command_},
          {"model_path", model_path_.string()},
          {"n_features", n_features_}};
}

ExternalClassifier ExternalClassifier::from_json(const Json& doc) {
  try {
    return ExternalClassifier(doc.at("command").get<std::string>(),
                              doc.at("model_path").get<std::string>(),
                              doc.at("n_features").get<std::size_t>());
  } catch (const Json::exception& e) {
    throw InvalidModelError(std::string("malformed external classifier document: ") + e.what());
  }
}

ExternalLearner::ExternalLearner(std::string command, fs::path workdir)
    : command_(std::move(command)), workdir_(std::move(workdir)) {
  if (command_.empty()) throw ParameterError("external learner needs a command");
}

ClassifierPtr ExternalLearner::fit(const Dataset& data, RandomSource rng) const {
  fs::create_directories(workdir_);
  const std::string stem = unique_stem(rng);
  const fs::path train = workdir_ / (stem + ".train.csv");
  const fs::path model = workdir_ / (stem + ".model");
  save_csv(train, data);
  run(quote(command_) + " fit " + quote(train.string()) + " " + quote(model.string()));
  fs::remove(train);
  return std::make_shared<ExternalClassifier>(command_, fs::absolute(model), data.n_features());
}

Json ExternalLearner::params() const {
  return {{"command", command_}, {"workdir", workdir_.string()}};
}

}  // namespace spe
