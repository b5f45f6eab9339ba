#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace rotwave {

/// Bad argument values (negative Coriolis frequency, invalid orders, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures that happen while a solver is running. Carries the
/// simulation time at which the failure was detected (NaN if unknown).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          double time = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

 private:
  double time_;
};

/// A symbol or depth that must stay positive did not.
class PositivityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The scalar model's evolution operator is not invertible for this set.
class NonEvolvable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CflViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BlowUp : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EllipticDivergence : public NumericalError {
 public:
  EllipticDivergence(const std::string& what, double residual, int iterations)
      : NumericalError(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

class ConfigError : public std::runtime_error {
 public:
  /// `line` is the first offending line (0 if not tied to a line).
  ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rotwave
