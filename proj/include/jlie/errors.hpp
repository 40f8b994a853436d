#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace jlie {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed expression text, manifest JSON, or registry data.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& what) : Error(what), position_(0) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Chart mismatches, wrong degrees, out-of-range indices.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Division by an expression that is identically zero.
class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

// Evaluation hit a vanishing denominator. Carries the integration time when
// raised mid-trajectory.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what) : Error(what) {}
  PoleError(const std::string& what, double time) : Error(what), time_(time) {}
  std::optional<double> time() const { return time_; }

 private:
  std::optional<double> time_;
};

// Evaluation failed for a reason other than a pole (exp in the exact path,
// exhausted resample budget, non-finite state).
class EvalError : public Error {
 public:
  using Error::Error;
};

// A structure whose compatibility conditions did not verify was passed to an
// operation that requires a usable one.
class UnusableStructureError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed (registry corruption, inexact division
// where exactness is guaranteed, function-algebra residual that should vanish).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace jlie
