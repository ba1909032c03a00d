#include "spe/data.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "spe/errors.hpp"

namespace spe {

void CheckerboardSpec::validate() const {
  if (grid_size < 2) throw ParameterError("checkerboard grid must be at least 2x2");
  if (!(cov_scale > 0.0) || !std::isfinite(cov_scale))
    throw ParameterError("cov_scale must be positive");
  if (n_minority < 1 || n_majority < 1) throw ParameterError("class counts must be >= 1");
}

Dataset generate_checkerboard(const CheckerboardSpec& spec) {
  spec.validate();
  std::vector<std::pair<double, double>> centres[2];
  for (std::size_t r = 0; r < spec.grid_size; ++r)
    for (std::size_t c = 0; c < spec.grid_size; ++c)
      centres[(r + c) % 2].emplace_back(static_cast<double>(r), static_cast<double>(c));

  RandomSource rng(spec.seed);
  const double sd = std::sqrt(spec.cov_scale);
  const std::size_t n = spec.n_minority + spec.n_majority;
  std::vector<double> features;
  features.reserve(2 * n);
  std::vector<Label> labels;
  labels.reserve(n);
  auto emit = [&](Label y, std::size_t count) {
    const auto& pool = centres[y];
    for (std::size_t i = 0; i < count; ++i) {
      const auto& [r, c] = pool[rng.uniform_index(pool.size())];
      features.push_back(r + sd * rng.normal());
      features.push_back(c + sd * rng.normal());
      labels.push_back(y);
    }
  };
  emit(1, spec.n_minority);
  emit(0, spec.n_majority);
  return Dataset(std::move(features), 2, std::move(labels), {"x0", "x1"});
}

// ---- CSV -------------------------------------------------------------------

namespace {

std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  if (quoted) throw ParseError("unterminated quote on line " + std::to_string(line_no));
  cells.push_back(std::move(cell));
  return cells;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::size_t resolve_label_column(const CsvTable& table, const CsvLoadOptions& options) {
  const long n = static_cast<long>(table.header.size());
  if (const auto* name = std::get_if<std::string>(&options.label_column)) {
    for (long i = 0; i < n; ++i)
      if (table.header[i] == *name) return static_cast<std::size_t>(i);
    throw InvalidInputError("label column \"" + *name + "\" not found in header");
  }
  long idx = std::get<long>(options.label_column);
  if (idx < 0) idx += n;
  if (idx < 0 || idx >= n)
    throw InvalidInputError("label column index " + std::to_string(std::get<long>(options.label_column)) +
                            " out of range for " + std::to_string(n) + " columns");
  return static_cast<std::size_t>(idx);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

}  // namespace

double parse_real(std::string_view text) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last)
    throw ParseError("not a real number: \"" + std::string(text) + "\"");
  return v;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0)
        line.erase(0, 3);
      if (line.empty()) throw ParseError("missing header row");
      for (auto& h : split_line(line, line_no)) table.header.push_back(trim(std::move(h)));
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto cells = split_line(line, line_no);
    if (cells.size() != table.header.size())
      throw ParseError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " fields, header has " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw ParseError("missing header row");
  return table;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv_table(in);
}

LoadedCsv load_csv(std::istream& in, const CsvLoadOptions& options) {
  const CsvTable table = read_csv_table(in);
  const std::size_t label_col = resolve_label_column(table, options);
  if (table.header.size() < 2) throw InvalidInputError("CSV needs at least one feature column");

  LoadedCsv out;
  out.label_name = table.header[label_col];
  std::vector<std::string> names;
  for (std::size_t j = 0; j < table.header.size(); ++j)
    if (j != label_col) names.push_back(table.header[j]);

  std::vector<double> features;
  features.reserve(table.rows.size() * names.size());
  std::vector<Label> labels;
  labels.reserve(table.rows.size());
  std::set<std::string> other_labels;

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == label_col) continue;
      const std::string cell = trim(row[j]);
      if (cell == options.missing_token) {
        features.push_back(0.0);
        ++out.missing_count;
        continue;
      }
      try {
        features.push_back(parse_real(cell));
      } catch (const ParseError&) {
        throw ParseError("non-numeric value \"" + cell + "\" in column \"" + table.header[j] +
                         "\" at data row " + std::to_string(i + 1) +
                         " (categorical features must be encoded before loading)");
      }
    }
    const std::string y = trim(row[label_col]);
    if (y == options.positive_label) {
      labels.push_back(1);
    } else {
      if (options.negative_label ? y != *options.negative_label : false)
        throw LabelError("unknown label \"" + y + "\" at data row " + std::to_string(i + 1));
      other_labels.insert(y);
      if (other_labels.size() > 1)
        throw LabelError("label column \"" + out.label_name +
                         "\" has more than two distinct values; binary labels required");
      labels.push_back(0);
    }
  }
  const std::size_t n_features = names.size();
  out.data = Dataset(std::move(features), n_features, std::move(labels), std::move(names));
  return out;
}

LoadedCsv load_csv(const std::filesystem::path& path, const CsvLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_csv(in, options);
}

std::vector<std::string> feature_names_or_default(const Dataset& data) {
  if (!data.feature_names().empty()) return data.feature_names();
  std::vector<std::string> names;
  for (std::size_t j = 0; j < data.n_features(); ++j) names.push_back("x" + std::to_string(j));
  return names;
}

void write_feature_csv(std::ostream& out, const Dataset& data, std::span<const std::size_t> rows) {
  const auto names = feature_names_or_default(data);
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t r : rows) {
    const auto x = data.row(r);
    for (std::size_t j = 0; j < x.size(); ++j) out << (j ? "," : "") << format_real(x[j]);
    out << '\n';
  }
}

void save_csv(std::ostream& out, const Dataset& data) {
  const auto names = feature_names_or_default(data);
  for (const auto& n : names) out << n << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    for (double v : data.row(i)) out << format_real(v) << ',';
    out << static_cast<int>(data.label(i)) << '\n';
  }
  if (!out) throw IoError("write failed");
}

void save_csv(const std::filesystem::path& path, const Dataset& data) {
  auto os = open_out(path);
  save_csv(os, data);
}

// ---- corruption ------------------------------------------------------------

Dataset corrupt_missing(const Dataset& data, double missing_ratio, RandomSource& rng) {
  if (!(missing_ratio >= 0.0 && missing_ratio < 1.0))
    throw ParameterError("missing ratio must lie in [0, 1)");
  const std::size_t cells = data.n_rows() * data.n_features();
  const auto count = static_cast<std::size_t>(std::floor(missing_ratio * static_cast<double>(cells)));
  std::vector<double> features = data.features();
  // Floyd's algorithm: `count` distinct cells in O(count) draws.
  std::vector<bool> chosen(cells, false);
  for (std::size_t j = cells - count; j < cells; ++j) {
    const std::size_t t = rng.uniform_index(j + 1);
    const std::size_t cell = chosen[t] ? j : t;
    chosen[cell] = true;
    features[cell] = 0.0;
  }
  return data.with_features(std::move(features));
}

}  // namespace spe
