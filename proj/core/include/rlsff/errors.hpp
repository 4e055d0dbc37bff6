#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlsff {

/// A configuration field failed validation. `field()` names the offender.
class InvalidConfigError : public std::invalid_argument {
 public:
  InvalidConfigError(std::string field, const std::string& message)
      : std::invalid_argument("invalid configuration [" + field + "]: " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Runtime input rejected (dimension mismatch, non-finite values, too-short sequence).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariance lost positive definiteness beyond tolerance.
class NumericalDegeneracyError : public std::runtime_error {
 public:
  NumericalDegeneracyError(double eigenvalue, const std::string& message)
      : std::runtime_error(message), eigenvalue_(eigenvalue) {}

  /// The offending (smallest) eigenvalue.
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Normal matrix numerically singular in a pure batch solve.
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(double smallest_singular_value, const std::string& message)
      : std::runtime_error(message), smallest_singular_value_(smallest_singular_value) {}

  double smallest_singular_value() const noexcept { return smallest_singular_value_; }

 private:
  double smallest_singular_value_;
};

/// Malformed CSV content. `line()` is the 1-based file line (header is line 1).
class CsvFormatError : public std::runtime_error {
 public:
  CsvFormatError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Filesystem-level failure (open, write, rename).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rlsff
