#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace stabsel {

using Index = Eigen::Index;

/// Dense column vector. Entries are expected to be finite.
using Vector = Eigen::VectorXd;

/// Dense column-major matrix. Entries are expected to be finite.
using Matrix = Eigen::MatrixXd;

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument value was violated (k < 1, epsilon out of range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A factorization or iteration broke down (non-SPD block, PCG breakdown).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(Index expected, Index actual, const char* what) {
  if (expected != actual) {
    throw DimensionError(std::string(what) + ": dimension mismatch (expected " +
                         std::to_string(expected) + ", got " + std::to_string(actual) + ")");
  }
}

}  // namespace stabsel
