#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dporo {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- numerical failures (CLI exit code 3) ---

struct NumericalError : Error {
  using Error::Error;
};

// Pivot collapsed during elimination; the system has no reliable solution.
struct SingularError : NumericalError {
  using NumericalError::NumericalError;
};

// Root iteration did not meet the residual criterion within the sweep budget.
struct NoConvergenceError : NumericalError {
  NoConvergenceError(std::string msg, std::vector<std::complex<double>> iterate,
                     double worst)
      : NumericalError(std::move(msg)), best_iterate(std::move(iterate)),
        worst_residual(worst) {}
  std::vector<std::complex<double>> best_iterate;
  double worst_residual = 0.0;
};

// expm produced non-finite entries.
struct OverflowError : NumericalError {
  using NumericalError::NumericalError;
};

// Modal resolvent denominator vanished (undamped resonance).
struct SingularSystemError : NumericalError {
  SingularSystemError(std::string msg, double lam, int mode)
      : NumericalError(std::move(msg)), lambda(lam), n(mode) {}
  double lambda = 0.0;
  int n = 0;
};

// Energy non-positive inside a log-linear fit window.
struct NonPositiveEnergyError : NumericalError {
  using NumericalError::NumericalError;
};

// --- usage errors ---

// Operation invoked under a boundary condition it is not defined for.
struct BcMismatchError : Error {
  using Error::Error;
};

// Initial data carries a conserved mean component that would never decay.
struct MeanViolationError : Error {
  using Error::Error;
};

// Sample grid too coarse for the requested mode count.
struct GridTooCoarseError : Error {
  using Error::Error;
};

// --- configuration errors (CLI exit code 2) ---

struct ConfigError : Error {
  ConfigError(std::string msg, int line_no = 0)
      : Error(std::move(msg)), line(line_no) {}
  int line = 0;
};

struct UnknownKeyError : ConfigError {
  using ConfigError::ConfigError;
};

struct MissingKeyError : ConfigError {
  using ConfigError::ConfigError;
};

} // namespace dporo
