// Command-line front end: generate, train, predict, eval, metrics, bench.

#include <charconv>
#include <chrono>
#include <ctime>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spe/bench.hpp"
#include "spe/data.hpp"
#include "spe/ensemble_methods.hpp"
#include "spe/errors.hpp"
#include "spe/metrics.hpp"

namespace fs = std::filesystem;
using spe::Json;

namespace {

std::vector<std::string> names_of(auto const& list) {
  return std::vector<std::string>(list.begin(), list.end());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw spe::IoError("cannot open " + path.string() + " for writing");
  os << text;
  if (!os) throw spe::IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const Json& doc) { write_text(path, doc.dump(2) + "\n"); }

Json read_json(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw spe::IoError("cannot open " + path.string());
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    throw spe::ParseError(path.string() + ": " + e.what());
  }
}

std::array<double, 3> parse_fractions(const std::string& text) {
  std::array<double, 3> out{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) throw spe::ParameterError("--split-fractions takes exactly three values");
    out[i++] = spe::parse_real(part);
  }
  if (i != 3) throw spe::ParameterError("--split-fractions takes exactly three values");
  return out;
}

// ---- shared flag groups ------------------------------------------------------

struct CheckerboardFlags {
  spe::CheckerboardSpec spec;

  void add(CLI::App* app) {
    app->add_option("--cov", spec.cov_scale, "Component variance (covariance = cov * I)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--n-minority", spec.n_minority, "Minority rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--n-majority", spec.n_majority, "Majority rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--grid", spec.grid_size, "Grid side length")
        ->check(CLI::Range(2, 64))
        ->capture_default_str();
  }

  Json to_json() const {
    return {{"grid_size", spec.grid_size},
            {"cov_scale", spec.cov_scale},
            {"n_minority", spec.n_minority},
            {"n_majority", spec.n_majority},
            {"seed", spec.seed}};
  }
};

struct DataFlags {
  std::string path;
  std::string label_column = "-1";
  std::string positive_label = "1";
  std::string negative_label;
  std::string missing_token;
  CheckerboardFlags generated;

  void add(CLI::App* app) {
    app->add_option("--data", path, "Input CSV; omit to generate a checkerboard dataset");
    app->add_option("--label-column", label_column, "Label column name or index (-1 = last)")
        ->capture_default_str();
    app->add_option("--positive-label", positive_label, "Label text of the minority class")
        ->capture_default_str();
    app->add_option("--negative-label", negative_label,
                    "Label text of the majority class (reject any other value)");
    app->add_option("--missing-token", missing_token, "Cell text treated as missing (imputed 0)");
    generated.add(app);
  }

  struct Loaded {
    spe::Dataset data;
    Json source;
  };

  Loaded load(std::uint64_t seed) const {
    if (path.empty()) {
      spe::CheckerboardSpec spec = generated.spec;
      spec.seed = seed;
      CheckerboardFlags echo{spec};
      return {spe::generate_checkerboard(spec), {{"generated", "checkerboard"}, {"spec", echo.to_json()}}};
    }
    spe::CsvLoadOptions opts;
    long index = 0;
    const auto [p, ec] = std::from_chars(label_column.data(), label_column.data() + label_column.size(), index);
    if (ec == std::errc() && p == label_column.data() + label_column.size())
      opts.label_column = index;
    else
      opts.label_column = label_column;
    opts.positive_label = positive_label;
    if (!negative_label.empty()) opts.negative_label = negative_label;
    opts.missing_token = missing_token;
    auto loaded = spe::load_csv(fs::path(path), opts);
    Json source{{"csv", path},
                {"label_column", loaded.label_name},
                {"positive_label", positive_label},
                {"missing_cells", loaded.missing_count}};
    return {std::move(loaded.data), std::move(source)};
  }
};

struct LearnerFlags {
  spe::LearnerSpec spec;

  void add(CLI::App* app) {
    app->add_option("--learner", spec.kind, "Base learner")
        ->check(CLI::IsMember({"tree", "adaboost", "external"}))
        ->capture_default_str();
    app->add_option("--max-depth", spec.tree.max_depth, "Tree max depth")
        ->check(CLI::PositiveNumber)
        ->default_val(10);
    app->add_option("--min-samples-split", spec.tree.min_samples_split, "Tree min rows to split")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--min-impurity-decrease", spec.tree.min_impurity_decrease,
                    "Tree min weighted impurity decrease")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    app->add_option("--ada-estimators", spec.adaboost.n_estimators, "AdaBoost rounds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--ada-depth", spec.adaboost.weak_learner_depth, "AdaBoost weak-learner depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--ada-learning-rate", spec.adaboost.learning_rate, "AdaBoost learning rate")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--external-command", spec.external_command,
                    "Program implementing the external learner protocol");
    app->add_option("--external-workdir", spec.external_workdir, "Directory for external models")
        ->capture_default_str();
  }
};

struct MethodFlags {
  std::string method = "spe";
  std::string hardness = "absolute";
  std::size_t n_estimators = 10;
  std::size_t k_bins = 20;
  double alpha_cap = spe::kDefaultAlphaCap;
  double keep_fp_rate = 0.0;
  LearnerFlags learner;

  void add(CLI::App* app) {
    app->add_option("--method", method, "Training method")
        ->check(CLI::IsMember(names_of(spe::kMethodNames)))
        ->capture_default_str();
    app->add_option("--n-estimators", n_estimators, "Ensemble size")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--k-bins", k_bins, "Hardness bins")->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--hardness", hardness, "Hardness function")
        ->check(CLI::IsMember(names_of(spe::kHardnessNames)))
        ->capture_default_str();
    app->add_option("--alpha-cap", alpha_cap, "Upper clamp of the self-paced factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--keep-fp-rate", keep_fp_rate,
                    "Cascade pool keep fraction in (0,1]; default (|P|/|N|)^(1/(n-1))")
        ->check(CLI::Range(0.0, 1.0));
    learner.add(app);
  }

  spe::MethodConfig resolve(std::uint64_t seed) const {
    spe::MethodConfig cfg;
    cfg.method = spe::method_from_string(method);
    cfg.n_estimators = n_estimators;
    cfg.k_bins = k_bins;
    cfg.hardness = spe::hardness_from_string(hardness);
    cfg.alpha_cap = alpha_cap;
    if (keep_fp_rate > 0.0) cfg.keep_fp_rate = keep_fp_rate;
    cfg.learner = learner.spec;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

const std::array<std::string_view, 4> kSplitNames = {"train", "validation", "test", "all"};

spe::IndexList pick_split(const spe::Dataset& data, const std::string& which,
                          std::array<double, 3> fractions, std::uint64_t seed) {
  if (which == "all") {
    spe::IndexList all(data.n_rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  spe::RandomSource rng = spe::RandomSource(seed).derive("split");
  auto split = spe::stratified_split(data, fractions, rng);
  if (which == "train") return split.train;
  if (which == "validation") return split.validation;
  return split.test;
}

Json split_summary(const spe::Dataset& d) {
  return {{"rows", d.n_rows()}, {"minority", d.n_minority()}, {"majority", d.n_majority()}};
}

// ---- subcommands -------------------------------------------------------------

struct GenerateCmd {
  CheckerboardFlags flags;
  std::uint64_t seed = 0;
  std::string output;

  void run() {
    flags.spec.seed = seed;
    const spe::Dataset data = spe::generate_checkerboard(flags.spec);
    spe::save_csv(fs::path(output), data);
    Json summary{{"output", output},
                 {"n_minority", data.n_minority()},
                 {"n_majority", data.n_majority()},
                 {"imbalance_ratio", data.imbalance_ratio()}};
    write_json(output + ".meta.json",
               {{"generator", "checkerboard"},
                {"spec", flags.to_json()},
                {"summary", summary},
                {"created", utc_timestamp()}});
    std::cout << summary.dump() << std::endl;
  }
};

struct TrainCmd {
  DataFlags data;
  MethodFlags method;
  std::uint64_t seed = 0;
  std::string split_fractions = "0.6,0.2,0.2";
  std::string output;
  std::string report;

  void run() {
    const spe::MethodConfig cfg = method.resolve(seed);
    const auto fractions = parse_fractions(split_fractions);
    const auto loaded = data.load(seed);
    const spe::Dataset train =
        loaded.data.subset(pick_split(loaded.data, "train", fractions, seed));

    const spe::FitResult fit = spe::fit_method(train, cfg);

    const Json experiment{{"config", cfg.to_json()},
                          {"data", loaded.source},
                          {"split", {{"fractions", fractions}, {"seed", seed}}}};
    Json model = fit.model.to_json();
    model["experiment"] = experiment;
    write_json(output, model);

    const std::string report_path = report.empty() ? output + ".report.json" : report;
    write_json(report_path, {{"experiment", experiment},
                             {"train_split", split_summary(train)},
                             {"members", fit.model.size()},
                             {"training", fit.report.to_json()}});
    std::cout << Json{{"model", output},
                      {"report", report_path},
                      {"method", cfg.to_json()["method"]},
                      {"members", fit.model.size()}}
                     .dump()
              << std::endl;
  }
};

spe::EnsembleModel load_model(const std::string& path, Json* experiment = nullptr) {
  const Json doc = read_json(path);
  if (experiment) *experiment = doc.value("experiment", Json::object());
  return spe::EnsembleModel::from_json(doc);
}

void check_arity(const spe::EnsembleModel& model, const spe::Dataset& data) {
  if (model.n_features() != data.n_features())
    throw spe::DimensionError("model expects " + std::to_string(model.n_features()) +
                              " features but the data has " + std::to_string(data.n_features()));
}

struct EvalCmd {
  std::string model_path;
  DataFlags data;
  std::string split = "test";
  std::string split_fractions = "0.6,0.2,0.2";
  std::uint64_t seed = 0;
  double threshold = 0.5;
  std::string output;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* fractions_opt = nullptr;

  void run() {
    Json experiment;
    const spe::EnsembleModel model = load_model(model_path, &experiment);
    // Unless overridden, reuse the split the model was trained with.
    std::uint64_t split_seed = seed;
    auto fractions = parse_fractions(split_fractions);
    if (experiment.contains("split")) {
      if (seed_opt->count() == 0) split_seed = experiment["split"].value("seed", seed);
      if (fractions_opt->count() == 0 && experiment["split"].contains("fractions"))
        fractions = experiment["split"]["fractions"].get<std::array<double, 3>>();
    }
    const auto loaded = data.load(split_seed);
    check_arity(model, loaded.data);
    const spe::Dataset part = loaded.data.subset(pick_split(loaded.data, split, fractions, split_seed));
    const Json metrics = spe::evaluate(model, part, threshold).to_json();
    if (!output.empty()) write_json(output, metrics);
    std::cout << metrics.dump() << std::endl;
  }
};

struct PredictCmd {
  std::string model_path;
  DataFlags data;
  std::uint64_t seed = 0;
  std::string output;

  void run() {
    const spe::EnsembleModel model = load_model(model_path);
    const auto loaded = data.load(seed);
    check_arity(model, loaded.data);
    const auto scores = model.predict_all(loaded.data);
    std::ostringstream os;
    os << "score\n";
    for (double s : scores) os << spe::format_real(s) << '\n';
    if (output.empty()) std::cout << os.str();
    else write_text(output, os.str());
  }
};

struct MetricsCmd {
  std::string input;
  double threshold = 0.5;
  std::string output;

  void run() {
    const spe::CsvTable table = spe::read_csv_table(fs::path(input));
    if (table.header.size() != 2)
      throw spe::InvalidInputError("metrics input needs exactly two columns (label, score)");
    std::vector<spe::Label> labels;
    std::vector<double> scores;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const double y = spe::parse_real(table.rows[i][0]);
      if (y != 0.0 && y != 1.0)
        throw spe::LabelError("label at data row " + std::to_string(i + 1) + " is not 0 or 1");
      labels.push_back(static_cast<spe::Label>(y));
      scores.push_back(spe::parse_real(table.rows[i][1]));
    }
    const Json metrics = spe::evaluate_scores(labels, scores, threshold).to_json();
    if (!output.empty()) write_json(output, metrics);
    std::cout << metrics.dump() << std::endl;
  }
};

struct BenchCmd {
  std::string suite = "checkerboard";
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  std::string output;
  std::vector<std::string> learners;
  std::vector<std::string> methods;
  std::size_t n_estimators = 10;
  std::size_t k_bins = 20;
  std::string hardness = "absolute";
  int max_depth = 10;
  int ada_depth = 1;
  std::size_t ada_estimators = 10;
  CheckerboardFlags data;
  bool verbose = false;

  void run() {
    spe::BenchOptions o;
    o.suite = suite;
    o.repeats = repeats;
    o.seed = seed;
    o.n_estimators = n_estimators;
    o.k_bins = k_bins;
    o.hardness = spe::hardness_from_string(hardness);
    o.data = data.spec;
    if (!methods.empty()) {
      o.methods.clear();
      for (const auto& m : methods) o.methods.push_back(spe::method_from_string(m));
    }
    for (const auto& l : learners) {
      spe::LearnerSpec s = l == "tree" ? spe::default_tree_spec() : spe::default_adaboost_spec();
      s.tree.max_depth = max_depth;
      s.adaboost.weak_learner_depth = ada_depth;
      s.adaboost.n_estimators = ada_estimators;
      o.learners.push_back(s);
    }
    if (verbose) o.progress = [](const std::string& msg) { std::cerr << msg << '\n'; };

    const auto t0 = std::chrono::steady_clock::now();
    const spe::BenchResult result = spe::run_bench(o);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const fs::path dir(output);
    fs::create_directories(dir);
    std::ostringstream csv;
    spe::write_bench_csv(csv, result);
    write_text(dir / "results.csv", csv.str());
    write_json(dir / "results.json", spe::bench_to_json(result));
    write_json(dir / "metadata.json",
               {{"created", utc_timestamp()}, {"elapsed_seconds", seconds}, {"config", result.config}});

    std::size_t failed = 0;
    for (const auto& r : result.rows) failed += r.errors.empty() ? 0 : 1;
    std::cout << Json{{"suite", suite},
                      {"rows", result.rows.size()},
                      {"rows_with_failures", failed},
                      {"results_csv", (dir / "results.csv").string()}}
                     .dump()
              << std::endl;
  }
};

std::string trim_copy(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Appends "--key=value" for every entry of a --config file whose key was not
// given on the command line. Lines: key=value, '#' comments, and optional
// [section] headers (only the one naming the subcommand is read).
std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.size() < 2) return args;
  std::string path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw spe::IoError("cannot open config file " + path);

  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (std::size_t i = 2; i < args.size(); ++i)
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  bool active = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_copy(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      const std::string section = trim_copy(line.substr(1, line.size() - 2));
      active = section.empty() || section == args[1] || section == "default";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw spe::ParseError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim_copy(line.substr(0, eq));
    std::string value = trim_copy(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (!active || key == "config" || given(key)) continue;
    extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

void emit_error(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  std::string config_file;  // consumed by expand_config
  CLI::App app{"Self-paced ensemble training and evaluation for imbalanced binary data"};
  app.require_subcommand(1);

  GenerateCmd gen;
  auto* gen_app = app.add_subcommand("generate", "Write a synthetic checkerboard dataset as CSV");
  gen_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  gen.flags.add(gen_app);
  gen_app->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  gen_app->add_option("--output,-o", gen.output, "Output CSV path")->required();

  TrainCmd train;
  auto* train_app = app.add_subcommand("train", "Train an ensemble and write the model as JSON");
  train_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  train.data.add(train_app);
  train.method.add(train_app);
  train_app->add_option("--seed", train.seed, "Random seed")->capture_default_str();
  train_app->add_option("--split-fractions", train.split_fractions, "train,validation,test")
      ->capture_default_str();
  train_app->add_option("--output,-o", train.output, "Model JSON path")->required();
  train_app->add_option("--report", train.report, "Training report path (default <output>.report.json)");

  PredictCmd predict;
  auto* predict_app = app.add_subcommand("predict", "Score every row of a dataset");
  predict_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  predict_app->add_option("--model,-m", predict.model_path, "Model JSON")->required();
  predict.data.add(predict_app);
  predict_app->add_option("--seed", predict.seed, "Seed for a generated dataset")->capture_default_str();
  predict_app->add_option("--output,-o", predict.output, "Scores CSV (default stdout)");

  EvalCmd eval;
  auto* eval_app = app.add_subcommand("eval", "Evaluate a model on one split of a dataset");
  eval_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  eval_app->add_option("--model,-m", eval.model_path, "Model JSON")->required();
  eval.data.add(eval_app);
  eval_app->add_option("--split", eval.split, "Which split to evaluate")
      ->check(CLI::IsMember(names_of(kSplitNames)))
      ->capture_default_str();
  eval.fractions_opt = eval_app->add_option("--split-fractions", eval.split_fractions,
                                            "train,validation,test (default: as trained)");
  eval.seed_opt = eval_app->add_option("--seed", eval.seed, "Split seed (default: as trained)");
  eval_app->add_option("--threshold", eval.threshold, "Decision threshold")->capture_default_str();
  eval_app->add_option("--output,-o", eval.output, "Also write the metrics JSON here");

  MetricsCmd metrics;
  auto* metrics_app = app.add_subcommand("metrics", "Metrics from a (label, score) CSV");
  metrics_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  metrics_app->add_option("--input,-i", metrics.input, "Two-column CSV with header")->required();
  metrics_app->add_option("--threshold", metrics.threshold, "Decision threshold")->capture_default_str();
  metrics_app->add_option("--output,-o", metrics.output, "Also write the metrics JSON here");

  BenchCmd bench;
  auto* bench_app = app.add_subcommand("bench", "Run a checkerboard benchmark suite");
  bench_app->add_option("--config", config_file, "key=value file of defaults; command-line flags win");
  bench_app->add_option("--suite", bench.suite, "Suite")
      ->check(CLI::IsMember(names_of(spe::kSuiteNames)))
      ->capture_default_str();
  bench_app->add_option("--repeats", bench.repeats, "Independent runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_app->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  bench_app->add_option("--output,-o", bench.output, "Output directory")->required();
  bench_app->add_option("--learner", bench.learners, "Base learner(s); default depends on suite")
      ->check(CLI::IsMember({"tree", "adaboost"}));
  bench_app->add_option("--methods", bench.methods, "Methods to compare")
      ->check(CLI::IsMember(names_of(spe::kMethodNames)))
      ->delimiter(',');
  bench_app->add_option("--n-estimators", bench.n_estimators, "Ensemble size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_app->add_option("--k-bins", bench.k_bins, "Hardness bins")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_app->add_option("--hardness", bench.hardness, "Hardness function")
      ->check(CLI::IsMember(names_of(spe::kHardnessNames)))
      ->capture_default_str();
  bench_app->add_option("--max-depth", bench.max_depth, "Tree max depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_app->add_option("--ada-depth", bench.ada_depth, "AdaBoost weak-learner depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_app->add_option("--ada-estimators", bench.ada_estimators, "AdaBoost rounds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench.data.add(bench_app);
  bench_app->add_flag("--verbose,-v", bench.verbose, "Progress on stderr");

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const spe::Error& e) {
    emit_error(e.kind(), e.what());
    return 1;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (*gen_app) gen.run();
    else if (*train_app) train.run();
    else if (*predict_app) predict.run();
    else if (*eval_app) eval.run();
    else if (*metrics_app) metrics.run();
    else if (*bench_app) bench.run();
  } catch (const spe::Error& e) {
    emit_error(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
