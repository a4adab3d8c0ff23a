#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace stackvol {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a mathematical precondition or axiom (CLI exit 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DegenerateWeightError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonInvariantSectionError : public ValidationError {
 public:
  NonInvariantSectionError(std::string orbit, const std::string& detail)
      : ValidationError("non-invariant section on orbit '" + orbit + "': " + detail),
        orbit_(std::move(orbit)) {}
  const std::string& orbit() const { return orbit_; }

 private:
  std::string orbit_;
};

class NotFullError : public ValidationError {
 public:
  explicit NotFullError(std::string orbit)
      : ValidationError("object subset is not full: misses the orbit of '" + orbit + "'"),
        orbit_(std::move(orbit)) {}
  const std::string& orbit() const { return orbit_; }

 private:
  std::string orbit_;
};

class SectionMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Orbit parameter lies in the declared singular set.
class SingularOrbitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CriticalPointError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical procedure failed to reach its tolerance (CLI exit 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double partial_value, double error_estimate,
                 std::size_t evaluations)
      : NumericalError(what),
        partial_value_(partial_value),
        error_estimate_(error_estimate),
        evaluations_(evaluations) {}

  double partial_value() const { return partial_value_; }
  double error_estimate() const { return error_estimate_; }
  std::size_t evaluations() const { return evaluations_; }

 private:
  double partial_value_;
  double error_estimate_;
  std::size_t evaluations_;
};

class Divergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Unreadable or malformed input (CLI exit 3).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace stackvol
