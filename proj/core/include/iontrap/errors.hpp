#pragma once

#include <stdexcept>
#include <string>

namespace iontrap {

/// Thrown when an argument violates a documented precondition.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative solver gave up. Carries the last residual norm it reached.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string &what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

/// Adaptive integration could not meet its error target without the step
/// shrinking below the representable minimum.
class StepUnderflowError : public std::runtime_error {
public:
  StepUnderflowError(const std::string &what, double time_reached)
      : std::runtime_error(what), time_reached_(time_reached) {}

  double time_reached() const noexcept { return time_reached_; }

private:
  double time_reached_;
};

} // namespace iontrap
