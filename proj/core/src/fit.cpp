#include "couette/fit.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "couette/errors.hpp"

namespace couette {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw FitError("least_squares: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw FitError("least_squares: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw FitError("least_squares: x values are all equal");
  LinearFit f;
  f.n = static_cast<int>(n);
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  f.slope_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : std::numeric_limits<double>::infinity();
  return f;
}

double slope_confidence_halfwidth(const LinearFit& fit, double level) {
  if (fit.n <= 2) return std::numeric_limits<double>::infinity();
  boost::math::students_t dist(fit.n - 2);
  return boost::math::quantile(boost::math::complement(dist, 0.5 * (1.0 - level))) * fit.slope_stderr;
}

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> v, FitWindow window) {
  if (t.size() != v.size()) throw FitError("fit_power_law: t and v differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.lo || t[i] > window.hi) continue;
    if (!(t[i] > 0.0)) throw FitError("fit_power_law: nonpositive time " + std::to_string(t[i]));
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) {
      throw FitError("fit_power_law: nonpositive value " + std::to_string(v[i]) + " at t = " + std::to_string(t[i]));
    }
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(v[i]));
  }
  if (lx.size() < 5) throw FitError("fit_power_law: need at least 5 samples in the window, got " +
                                    std::to_string(lx.size()));
  const LinearFit lf = least_squares(lx, ly);
  return {lf.slope, std::exp(lf.intercept), lf.residual, lf.n};
}

}  // namespace couette
