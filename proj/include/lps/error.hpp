// Exception hierarchy shared by every lps component.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lps {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand dimensions do not match the operation's requirements.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside the operation's domain (negative norm
/// exponent, zero weight where strict positivity is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix that the operation must invert is singular to working precision.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An iterative decomposition failed to converge within its sweep cap.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// The supplied vectors do not span the space; carries the computed lower
/// bound (zero to working precision).
class NotAFrameError : public Error {
 public:
  NotAFrameError(const std::string& what, double lower_bound)
      : Error(what), lower(lower_bound) {}
  double lower;
};

/// A sparse-recovery or sampling reconstruction could not be completed,
/// typically because the reduced system is singular for the chosen indices.
class RecoveryError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line_number = 0)
      : Error(what), line(line_number) {}
  std::size_t line;
};

}  // namespace lps
