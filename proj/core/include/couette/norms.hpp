#pragma once

#include <string>

#include "couette/field.hpp"

namespace couette::spectral {

struct NormSpec {
  enum class Kind { sobolev, gevrey };
  Kind kind = Kind::sobolev;
  double s = 0.0;
  double lambda = 0.0;

  static NormSpec sobolev(double s) { return {Kind::sobolev, s, 0.0}; }
  static NormSpec gevrey(double lambda, double s) { return {Kind::gevrey, s, lambda}; }
  static NormSpec l2() { return sobolev(0.0); }

  /// Parses "L2", "H^s"/"sobolev:s", "G^lambda,s"/"gevrey:lambda,s". Throws ConfigError.
  static NormSpec parse(const std::string& text);
  std::string to_string() const;

  /// Squared weight at wavenumber magnitude |xi|. Throws RangeError on overflow.
  double weight_sq(double xi_abs) const;
};

/// sqrt(sum_c sum_xi |a_c(xi)|^2 weight(xi)); all components contribute.
double norm(const SpectralField& f, const NormSpec& spec);
double l2_norm(const SpectralField& f);
double l2_norm_sq(const SpectralField& f);

}  // namespace couette::spectral
