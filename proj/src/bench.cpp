#include "spe/bench.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "spe/errors.hpp"
#include "spe/metrics.hpp"

namespace spe {

namespace {

struct Setting {
  std::string tag;  // appended to metric names; empty for the plain suite
  double cov;
  double missing;
};

std::vector<Setting> settings_for(const BenchOptions& o) {
  if (o.suite == "checkerboard") return {{"", o.data.cov_scale, 0.0}};
  if (o.suite == "overlap-sweep")
    return {{"@cov=0.05", 0.05, 0.0}, {"@cov=0.10", 0.10, 0.0}, {"@cov=0.15", 0.15, 0.0}};
  if (o.suite == "missing-sweep")
    return {{"@missing=0.00", o.data.cov_scale, 0.0},
            {"@missing=0.25", o.data.cov_scale, 0.25},
            {"@missing=0.50", o.data.cov_scale, 0.50},
            {"@missing=0.75", o.data.cov_scale, 0.75}};
  throw ParameterError("unknown bench suite \"" + o.suite +
                       "\" (valid: checkerboard, overlap-sweep, missing-sweep)");
}

void summarize(BenchRow& row) {
  if (row.values.empty()) {
    row.mean = row.std = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  double sum = 0.0;
  for (double v : row.values) sum += v;
  row.mean = sum / static_cast<double>(row.values.size());
  double ss = 0.0;
  for (double v : row.values) ss += (v - row.mean) * (v - row.mean);
  row.std = std::sqrt(ss / static_cast<double>(row.values.size()));
}

}  // namespace

LearnerSpec default_tree_spec() {
  LearnerSpec s;
  s.kind = "tree";
  s.tree.max_depth = 10;
  return s;
}

LearnerSpec default_adaboost_spec() {
  LearnerSpec s;
  s.kind = "adaboost";
  s.adaboost.n_estimators = 10;
  s.adaboost.weak_learner_depth = 1;
  return s;
}

Json BenchOptions::to_json() const {
  Json methods_json = Json::array();
  for (Method m : methods) methods_json.push_back(to_string(m));
  Json learners_json = Json::array();
  for (const auto& l : learners) learners_json.push_back(l.to_json());
  return {{"suite", suite},
          {"repeats", repeats},
          {"seed", seed},
          {"methods", std::move(methods_json)},
          {"learners", std::move(learners_json)},
          {"n_estimators", n_estimators},
          {"k_bins", k_bins},
          {"hardness", to_string(hardness)},
          {"data",
           {{"grid_size", data.grid_size},
            {"cov_scale", data.cov_scale},
            {"n_minority", data.n_minority},
            {"n_majority", data.n_majority}}}};
}

const BenchRow* BenchResult::find(const std::string& method, const std::string& learner,
                                  const std::string& metric) const {
  for (const auto& r : rows)
    if (r.method == method && r.learner == learner && r.metric == metric) return &r;
  return nullptr;
}

BenchResult run_bench(const BenchOptions& options) {
  const auto settings = settings_for(options);
  if (options.repeats < 1) throw ParameterError("repeats must be >= 1");
  BenchOptions resolved = options;
  if (resolved.learners.empty()) {
    resolved.learners.push_back(default_tree_spec());
    if (options.suite == "checkerboard") resolved.learners.push_back(default_adaboost_spec());
  }
  for (const auto& l : resolved.learners) l.make();

  const bool all_metrics = settings.size() == 1 && settings.front().tag.empty();
  const std::vector<std::string> metric_names =
      all_metrics ? std::vector<std::string>{"aucprc", "f1", "gmean", "mcc"}
                  : std::vector<std::string>{"aucprc"};

  // Row order: setting, learner, method, metric.
  BenchResult result;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> first_row;
  for (std::size_t s = 0; s < settings.size(); ++s)
    for (std::size_t l = 0; l < resolved.learners.size(); ++l)
      for (std::size_t m = 0; m < resolved.methods.size(); ++m) {
        first_row[{s, l, m}] = result.rows.size();
        for (const auto& metric : metric_names)
          result.rows.push_back({std::string(to_string(resolved.methods[m])),
                                 resolved.learners[l].kind, metric + settings[s].tag, {}, {}, 0.0,
                                 0.0});
      }

  const RandomSource root(options.seed);
  for (std::size_t rep = 0; rep < options.repeats; ++rep) {
    const RandomSource rep_rng = root.derive("bench.repeat", rep);
    for (std::size_t s = 0; s < settings.size(); ++s) {
      CheckerboardSpec spec = options.data;
      spec.cov_scale = settings[s].cov;
      spec.seed = rep_rng.derive("data.train", s).seed();
      Dataset train = generate_checkerboard(spec);
      spec.seed = rep_rng.derive("data.test", s).seed();
      Dataset test = generate_checkerboard(spec);
      if (settings[s].missing > 0.0) {
        RandomSource a = rep_rng.derive("missing.train", s);
        RandomSource b = rep_rng.derive("missing.test", s);
        train = corrupt_missing(train, settings[s].missing, a);
        test = corrupt_missing(test, settings[s].missing, b);
      }

      for (std::size_t l = 0; l < resolved.learners.size(); ++l)
        for (std::size_t m = 0; m < resolved.methods.size(); ++m) {
          const std::size_t row0 = first_row[{s, l, m}];
          MethodConfig cfg;
          cfg.method = resolved.methods[m];
          cfg.n_estimators = options.n_estimators;
          cfg.k_bins = options.k_bins;
          cfg.hardness = options.hardness;
          cfg.learner = resolved.learners[l];
          cfg.seed = rep_rng.derive("method").seed();
          if (options.progress)
            options.progress(options.suite + " repeat " + std::to_string(rep + 1) + "/" +
                             std::to_string(options.repeats) + " " + result.rows[row0].method +
                             "+" + result.rows[row0].learner + settings[s].tag);
          try {
            const FitResult fit = fit_method(train, cfg);
            const MetricReport report = evaluate(fit.model, test);
            const double values[] = {report.aucprc, report.at_threshold.f1,
                                     report.at_threshold.gmean, report.at_threshold.mcc};
            for (std::size_t k = 0; k < metric_names.size(); ++k)
              result.rows[row0 + k].values.push_back(values[k]);
          } catch (const std::exception& e) {
            for (std::size_t k = 0; k < metric_names.size(); ++k)
              result.rows[row0 + k].errors.push_back("repeat " + std::to_string(rep) + ": " +
                                                     e.what());
          }
        }
    }
  }
  for (auto& row : result.rows) summarize(row);
  result.config = resolved.to_json();
  return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
  out << "method,learner,metric,mean,std\n";
  for (const auto& r : result.rows)
    out << r.method << ',' << r.learner << ',' << r.metric << ',' << format_real(r.mean) << ','
        << format_real(r.std) << '\n';
}

Json bench_to_json(const BenchResult& result) {
  Json rows = Json::array();
  for (const auto& r : result.rows) {
    Json row{{"method", r.method},
             {"learner", r.learner},
             {"metric", r.metric},
             {"runs", r.values.size()},
             {"values", r.values},
             {"failures", r.errors}};
    row["mean"] = std::isnan(r.mean) ? Json(nullptr) : Json(r.mean);
    row["std"] = std::isnan(r.std) ? Json(nullptr) : Json(r.std);
    rows.push_back(std::move(row));
  }
  return {{"config", result.config}, {"rows", std::move(rows)}};
}

}  // namespace spe
