#pragma once

#include "couette/field.hpp"

namespace couette::spectral {

struct ParaproductSplit {
  SpectralField lo_hi;  // f at low frequency, g at high frequency
  SpectralField hi_lo;  // f high, g low
  SpectralField hi_hi;  // comparable frequencies
};

/// C-infinity step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

/// Weight of the pair (|xi_f|, |xi_g|) in the LoHi region: 1 once |xi_g| >= 2 |xi_f|, 0 for |xi_g| <= |xi_f|.
/// A zero-frequency g always counts as low, so HiLo receives it.
double lohi_weight(double xi_f, double xi_g);
double hilo_weight(double xi_f, double xi_g);

/// Splits the dealiased product f * g by direct convolution over mode pairs. The three parts sum to
/// product(f, g) up to roundoff.
ParaproductSplit paraproduct_split(const SpectralField& f, const SpectralField& g);

/// c(s) in |xi|^s <= c(s) (|xi - eta|^s + |eta|^s) on the frequency-separated regions: the constant
/// max(2^s - 1, (3/2)^s / (1 + 2^-s)) is < 1 for 0 < s < 1.
double gevrey_product_constant(double s);

/// ||fg||_{G^{lambda,s}} / (||f||_{G^{lambda,s}} ||<grad>^p g||_{G^{c lambda,s}} + (f <-> g)).
/// Throws UndefinedRatioError if the denominator is zero and ArgumentError for s outside (0, 1).
double gevrey_product_ratio(const SpectralField& f, const SpectralField& g, double lambda, double s, double p);

}  // namespace couette::spectral
