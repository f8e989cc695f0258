#pragma once

#include <stdexcept>
#include <string>

namespace couette {

/// Invalid grid, solver or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested simulation time exceeds what the grid can represent.
class ResolutionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An argument lies outside the domain of an operation (k = 0 where k != 0 is required, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A weight such as e^{2 lambda |xi|^s} is not representable in double precision.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// A least-squares fit cannot be formed from the supplied series.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ratio was requested whose denominator vanishes.
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input violates an operation's precondition contract (e.g. nonzero U^2 passed to evolve_u13).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Errors raised during time integration carry the simulation time at which they occurred.
class TimedError : public std::runtime_error {
 public:
  TimedError(const std::string& what, double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Time step exceeds the CFL bound.
class StepSizeError : public TimedError {
 public:
  using TimedError::TimedError;
};

/// Non-finite values appeared in the solution.
class DivergenceError : public TimedError {
 public:
  using TimedError::TimedError;
};

/// Adaptive integrator could not meet its tolerance (step size underflow).
class ToleranceError : public TimedError {
 public:
  using TimedError::TimedError;
};

}  // namespace couette
