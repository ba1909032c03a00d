#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spe/dataset.hpp"
#include "spe/random.hpp"

namespace spe {

// ---- synthetic checkerboard ------------------------------------------------

/// Isotropic Gaussian components centred on the integer points (r, c) of a
/// grid_size x grid_size lattice. Component (r, c) belongs to the minority
/// class when r + c is odd.
struct CheckerboardSpec {
  std::size_t grid_size = 4;
  double cov_scale = 0.1;  // variance of each coordinate
  std::size_t n_minority = 1000;
  std::size_t n_majority = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Minority rows come first, then majority rows. Feature 0 is the row
/// coordinate r, feature 1 the column coordinate c.
Dataset generate_checkerboard(const CheckerboardSpec& spec);

// ---- CSV -------------------------------------------------------------------

/// Header plus raw string cells, as read from a comma-separated file.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table(const std::filesystem::path& path);

struct CsvLoadOptions {
  /// Column name, or index (negative counts from the end; -1 is the last).
  std::variant<std::string, long> label_column = -1L;
  std::string positive_label = "1";
  /// When set, any label other than positive/negative is rejected. When
  /// unset, the label column may hold at most two distinct values.
  std::optional<std::string> negative_label;
  std::string missing_token;  // cells equal to this are imputed as 0.0
};

struct LoadedCsv {
  Dataset data;
  std::size_t missing_count = 0;
  std::string label_name;
};

LoadedCsv load_csv(const std::filesystem::path& path, const CsvLoadOptions& options = {});
LoadedCsv load_csv(std::istream& in, const CsvLoadOptions& options = {});

/// Writes feature columns then a `label` column; reals use 17 significant
/// digits so a load_csv round trip is exact.
void save_csv(const std::filesystem::path& path, const Dataset& data);
void save_csv(std::ostream& out, const Dataset& data);

/// Feature columns only, for the given rows.
void write_feature_csv(std::ostream& out, const Dataset& data, std::span<const std::size_t> rows);

/// Column names used when a dataset has none: x0, x1, ...
std::vector<std::string> feature_names_or_default(const Dataset& data);

/// Locale-independent full-string real parse. Throws ParseError.
double parse_real(std::string_view text);
std::string format_real(double v);

// ---- corruption ------------------------------------------------------------

/// Zeroes exactly floor(ratio * rows * columns) distinct cells chosen
/// uniformly without replacement. Labels are untouched.
Dataset corrupt_missing(const Dataset& data, double missing_ratio, RandomSource& rng);

}  // namespace spe
