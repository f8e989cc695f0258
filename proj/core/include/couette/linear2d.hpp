#pragma once

#include <span>
#include <vector>

#include "couette/field.hpp"
#include "couette/fit.hpp"

namespace couette::linear2d {

using spectral::SpectralField;

/// Vorticity Omega(t, X, Y) in the sheared frame X = x - t y, Y = y.
struct LinearState2D {
  double t = 0.0;
  SpectralField omega;
  double nu = 0.0;
};

/// nu * int_{t0}^{t1} (k^2 + (eta - k s)^2 + l^2) ds, evaluated in the cancellation-free form
/// nu [(k^2 + l^2) dt + dt (a^2 + a b + b^2) / 3] with a = eta - k t0, b = eta - k t1.
double viscous_exponent(double k, double eta, double t0, double t1, double nu, double l = 0.0);

/// |xi_L|^2 = k^2 + (eta - k t)^2 + l^2
inline double symbol_sq(double k, double eta, double t, double l = 0.0) {
  const double e = eta - k * t;
  return k * k + e * e + l * l;
}

/// Exact propagator. Throws ArgumentError if t_target < state.t.
LinearState2D evolve_linear2d(const LinearState2D& state, double t_target);

/// Phi with Delta_L Phi = Omega; the (0,0) mode is gauged to zero.
SpectralField streamfunction(const SpectralField& omega, double t);
/// U = grad_L^perp Phi = (-(d_Y - t d_X) Phi, d_X Phi), two components.
SpectralField biot_savart(const SpectralField& omega, double t);
SpectralField biot_savart_velocity(const LinearState2D& state);

/// sqrt(k^2 + eta^2) / |k|. Throws ArgumentError for k = 0.
double orr_amplification(int k, double eta);
/// eta / k. Throws ArgumentError for k = 0.
double critical_time(int k, double eta);

struct Diagnostics {
  double t = 0.0;
  double norm_u1_neq = 0.0;
  double norm_u2 = 0.0;
  double norm_omega_neq = 0.0;
  double enstrophy = 0.0;
};

Diagnostics diagnostics(const LinearState2D& state);
/// Diagnostics at each (nondecreasing) time, evolving exactly from the initial state.
std::vector<Diagnostics> trajectory(const LinearState2D& initial, std::span<const double> times);

struct DampingFit {
  PowerLawFit u1;
  PowerLawFit u2;
};

/// Log-log slopes of ||u^1_neq|| and ||u^2|| over the window. Throws FitError on degenerate input.
DampingFit damping_rate_fit(std::span<const Diagnostics> samples, FitWindow window = {});

}  // namespace couette::linear2d
