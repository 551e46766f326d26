#pragma once

#include <stdexcept>
#include <string>

namespace coxsaito {

/// Base class of every error raised by the library.  `kind()` is a stable
/// machine-readable tag used in reports and by the CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Arithmetic kernel.
struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& w) : Error("DivisionByZero", w) {}
};
struct NonInvertible : Error {
  explicit NonInvertible(const std::string& w) : Error("NonInvertible", w) {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error("DimensionMismatch", w) {}
};
struct SingularMatrix : Error {
  explicit SingularMatrix(const std::string& w) : Error("SingularMatrix", w) {}
};
struct ZeroForm : Error {
  explicit ZeroForm(const std::string& w) : Error("ZeroForm", w) {}
};

// Group data.
struct UnsupportedType : Error {
  explicit UnsupportedType(const std::string& w) : Error("UnsupportedType", w) {}
};
struct RankOutOfRange : Error {
  explicit RankOutOfRange(const std::string& w) : Error("RankOutOfRange", w) {}
};

/// Raised by invariant validation.  `kind()` is one of WrongDegrees,
/// NotInvariant, JacobianCriterionFailed or InvalidDatum.
struct ValidationError : Error {
  ValidationError(std::string kind, const std::string& w) : Error(std::move(kind), w) {}
};

/// Integrity failure of the pipeline: a quantity that must be polynomial
/// was not.  Always signals a bug or corrupted input, never a check result.
struct NonPolynomialEntry : Error {
  explicit NonPolynomialEntry(const std::string& w) : Error("NonPolynomialEntry", w) {}
};
struct NonPolynomialCoefficients : Error {
  explicit NonPolynomialCoefficients(const std::string& w)
      : Error("NonPolynomialCoefficients", w) {}
};

struct ParseError : Error {
  ParseError(const std::string& w, int line, int column)
      : Error("ParseError", "line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ": " + w),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error("ConfigError", w) {}
};

}  // namespace coxsaito
