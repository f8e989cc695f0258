#pragma once

#include <limits>
#include <span>

namespace couette {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  /// Root mean square of the residuals.
  double residual = 0.0;
  int n = 0;
};

/// Ordinary least squares y = intercept + slope x. Requires at least 2 points and distinct x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Half width of the two-sided confidence interval for the slope at the given level (Student t).
double slope_confidence_halfwidth(const LinearFit& fit, double level = 0.95);

struct FitWindow {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  /// RMS residual in log v.
  double residual = 0.0;
  int n = 0;
};

/// log v = log C + p log t over samples with t inside the window. Throws FitError with fewer than
/// 5 points in the window, nonpositive t or nonpositive / non-finite v.
PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> v, FitWindow window = {});

}  // namespace couette
