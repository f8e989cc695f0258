#include "couette/linear2d.hpp"

#include <cmath>

#include "couette/errors.hpp"
#include "couette/norms.hpp"

namespace couette::linear2d {

using spectral::Complex;
using spectral::GridSpec;

double viscous_exponent(double k, double eta, double t0, double t1, double nu, double l) {
  const double dt = t1 - t0;
  const double a = eta - k * t0, b = eta - k * t1;
  return nu * ((k * k + l * l) * dt + dt * (a * a + a * b + b * b) / 3.0);
}

LinearState2D evolve_linear2d(const LinearState2D& state, double t_target) {
  if (t_target < state.t) throw ArgumentError("evolve_linear2d: t_target precedes the state time");
  if (state.nu < 0.0) throw ArgumentError("evolve_linear2d: nu must be >= 0");
  LinearState2D out = state;
  out.t = t_target;
  if (state.nu == 0.0 || t_target == state.t) return out;
  const double t0 = state.t, nu = state.nu;
  out.omega.apply_symbol([&](int k, double eta, int l) {
    return Complex(std::exp(-viscous_exponent(k, eta, t0, t_target, nu, l)), 0.0);
  });
  return out;
}

SpectralField streamfunction(const SpectralField& omega, double t) {
  SpectralField phi = omega;
  phi.apply_symbol([t](int k, double eta, int l) {
    const double m = symbol_sq(k, eta, t, l);
    return Complex(m == 0.0 ? 0.0 : -1.0 / m, 0.0);
  });
  return phi;
}

SpectralField biot_savart(const SpectralField& omega, double t) {
  if (omega.components() != 1 || omega.grid().dims != 2) throw ConfigError("biot_savart: scalar 2D vorticity required");
  const GridSpec& g = omega.grid();
  SpectralField u(g, 2);
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    const double k = g.kx(ix), eta = g.eta(iy);
    const double m = symbol_sq(k, eta, t);
    if (m == 0.0) return;
    const Complex phi = -omega.at(0, ix, iy, iz) / m;
    u.at(0, ix, iy, iz) = -Complex(0.0, eta - k * t) * phi;
    u.at(1, ix, iy, iz) = Complex(0.0, k) * phi;
  });
  return u;
}

SpectralField biot_savart_velocity(const LinearState2D& state) { return biot_savart(state.omega, state.t); }

double orr_amplification(int k, double eta) {
  if (k == 0) throw ArgumentError("orr_amplification: k = 0 has no critical time");
  return std::sqrt(static_cast<double>(k) * k + eta * eta) / std::abs(k);
}

double critical_time(int k, double eta) {
  if (k == 0) throw ArgumentError("critical_time: k = 0 has no critical time");
  return eta / k;
}

Diagnostics diagnostics(const LinearState2D& state) {
  const SpectralField u = biot_savart_velocity(state);
  Diagnostics d;
  d.t = state.t;
  d.norm_u1_neq = spectral::l2_norm(spectral::project_nonzero(u.extract(0)));
  d.norm_u2 = spectral::l2_norm(u.extract(1));
  d.norm_omega_neq = spectral::l2_norm(spectral::project_nonzero(state.omega));
  d.enstrophy = 0.5 * spectral::l2_norm_sq(state.omega);
  return d;
}

std::vector<Diagnostics> trajectory(const LinearState2D& initial, std::span<const double> times) {
  std::vector<Diagnostics> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(diagnostics(evolve_linear2d(initial, t)));
  return out;
}

DampingFit damping_rate_fit(std::span<const Diagnostics> samples, FitWindow window) {
  std::vector<double> t, u1, u2;
  for (const auto& d : samples) {
    t.push_back(d.t);
    u1.push_back(d.norm_u1_neq);
    u2.push_back(d.norm_u2);
  }
  return {fit_power_law(t, u1, window), fit_power_law(t, u2, window)};
}

}  // namespace couette::linear2d
