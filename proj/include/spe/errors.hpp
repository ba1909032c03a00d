#pragma once

#include <stdexcept>
#include <string>

namespace spe {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI error report.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

struct InvalidInputError : Error {
  explicit InvalidInputError(const std::string& what) : Error("invalid_input", what) {}
};

struct InvalidModelError : Error {
  explicit InvalidModelError(const std::string& what) : Error("invalid_model", what) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& what) : Error("dimension", what) {}
};

struct RangeError : Error {
  explicit RangeError(const std::string& what) : Error("range", what) {}
};

struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error("parameter", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

struct LabelError : Error {
  explicit LabelError(const std::string& what) : Error("label", what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace spe
