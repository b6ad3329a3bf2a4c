#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eulerkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable tag, e.g. "invalid_input" or "quadrature".
  virtual const char* kind() const noexcept { return "error"; }
};

/// Caller handed us something outside the operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_input"; }
};

/// Argument lies outside the mathematical domain of a function (poles, negative radicands).
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
  const char* kind() const noexcept override { return "domain"; }
};

/// A caller-supplied function failed a residual gate (e.g. a claimed particular solution).
class ResidualCheckFailed : public InvalidInput {
 public:
  ResidualCheckFailed(const std::string& what, double residual, double at)
      : InvalidInput(what), residual_(residual), at_(at) {}
  const char* kind() const noexcept override { return "residual_check"; }
  double residual() const noexcept { return residual_; }
  double at() const noexcept { return at_; }

 private:
  double residual_, at_;
};

/// A numerical procedure ran but could not deliver its contract.
class NumericFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric_failure"; }
};

/// Iterative root finder exhausted its budget. Carries the best iterate seen.
class ConvergenceFailure : public NumericFailure {
 public:
  ConvergenceFailure(const std::string& what, std::vector<std::complex<double>> best, int iterations)
      : NumericFailure(what), best_iterate_(std::move(best)), iterations_(iterations) {}
  const char* kind() const noexcept override { return "convergence"; }
  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_iterate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<std::complex<double>> best_iterate_;
  int iterations_;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureFailure : public NumericFailure {
 public:
  QuadratureFailure(const std::string& what, double achieved_error)
      : NumericFailure(what), achieved_error_(achieved_error) {}
  const char* kind() const noexcept override { return "quadrature"; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Integrand is singular (vanishing denominator) inside the integration interval.
class SingularIntegrand : public NumericFailure {
 public:
  SingularIntegrand(const std::string& what, double lo, double hi)
      : NumericFailure(what), lo_(lo), hi_(hi) {}
  const char* kind() const noexcept override { return "singular_integrand"; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

/// Linear system for boundary/initial conditions is singular or nearly so.
class SingularSystem : public NumericFailure {
 public:
  SingularSystem(const std::string& what, std::vector<int> offending, double condition)
      : NumericFailure(what), offending_(std::move(offending)), condition_(condition) {}
  const char* kind() const noexcept override { return "singular_system"; }
  const std::vector<int>& offending_conditions() const noexcept { return offending_; }
  double condition_number() const noexcept { return condition_; }

 private:
  std::vector<int> offending_;
  double condition_;
};

/// Solution blew up between two abscissae (a pole of a Riccati solution).
class PoleDetected : public NumericFailure {
 public:
  PoleDetected(const std::string& what, double lo, double hi)
      : NumericFailure(what), lo_(lo), hi_(hi) {}
  const char* kind() const noexcept override { return "pole"; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_, hi_;
};

/// Adaptive step size fell below the representable minimum.
class StepSizeUnderflow : public NumericFailure {
 public:
  StepSizeUnderflow(const std::string& what, double at)
      : NumericFailure(what), at_(at) {}
  const char* kind() const noexcept override { return "step_underflow"; }
  double location() const noexcept { return at_; }

 private:
  double at_;
};

/// Objective or gradient became non-finite at an accepted optimizer iterate.
class NonFiniteIterate : public NumericFailure {
 public:
  NonFiniteIterate(const std::string& what, int iterate)
      : NumericFailure(what), iterate_(iterate) {}
  const char* kind() const noexcept override { return "non_finite"; }
  int iterate() const noexcept { return iterate_; }

 private:
  int iterate_;
};

}  // namespace eulerkit
