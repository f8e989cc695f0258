#include "couette/linear3d.hpp"

#include <cmath>

#include "couette/errors.hpp"
#include "couette/linear2d.hpp"
#include "couette/norms.hpp"

namespace couette::linear3d {

using linear2d::symbol_sq;
using linear2d::viscous_exponent;
using spectral::Complex;
using spectral::GridSpec;

namespace {

void require_vector3(const SpectralField& u, const char* who) {
  if (u.grid().dims != 3 || u.components() != 3) throw ConfigError(std::string(who) + ": 3-vector on a 3D grid required");
}

SpectralField scaled(const SpectralField& f, double t, bool inverse_symbol) {
  SpectralField out = f;
  out.apply_symbol([&](int k, double eta, int l) {
    const double m = symbol_sq(k, eta, t, l);
    if (m == 0.0) return Complex{};
    return Complex(inverse_symbol ? -1.0 / m : -m, 0.0);
  });
  return out;
}

}  // namespace

SpectralField evolve_Q2(const SpectralField& q2_in, double nu, double t) {
  if (t < 0.0) throw ArgumentError("evolve_Q2: t must be >= 0");
  SpectralField out = q2_in;
  if (nu == 0.0) return out;
  out.apply_symbol([&](int k, double eta, int l) { return Complex(std::exp(-viscous_exponent(k, eta, 0.0, t, nu, l)), 0.0); });
  return out;
}

SpectralField recover_U2(const SpectralField& q2, double t) { return scaled(q2, t, true); }
SpectralField q2_from_U2(const SpectralField& u2, double t) { return scaled(u2, t, false); }

SpectralField pressure_from_U2(const SpectralField& u2, double t) {
  SpectralField p = u2;
  p.apply_symbol([&](int k, double eta, int l) {
    const double m = symbol_sq(k, eta, t, l);
    return m == 0.0 ? Complex{} : Complex(0.0, 2.0 * k / m);
  });
  return p;
}

double divergence_defect(const SpectralField& u, double t) {
  require_vector3(u, "divergence_defect");
  const GridSpec& g = u.grid();
  double worst = 0.0;
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    const double k = g.kx(ix), e = g.eta(iy) - k * t, l = g.kz(iz);
    const Complex d = k * u.at(0, ix, iy, iz) + e * u.at(1, ix, iy, iz) + l * u.at(2, ix, iy, iz);
    const double scale = std::sqrt(k * k + e * e + l * l);
    if (scale > 0.0) worst = std::max(worst, std::abs(d) / scale);
  });
  const double m = u.max_abs();
  return m > 0.0 ? worst / m : 0.0;
}

LinearState3D evolve_U13(const LinearState3D& state, double t) {
  require_vector3(state.u, "evolve_U13");
  if (t < state.t) throw ArgumentError("evolve_U13: t precedes the state time");
  const double m = state.u.max_abs();
  for (const auto& a : state.u.component(1)) {
    if (std::abs(a) > 0.0) throw ContractViolation("evolve_U13: U2 must vanish identically");
  }
  const GridSpec& g = state.u.grid();
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    const Complex d = double(g.kx(ix)) * state.u.at(0, ix, iy, iz) + double(g.kz(iz)) * state.u.at(2, ix, iy, iz);
    if (std::abs(d) > 1e-10 * std::max(m, 1e-300) * (std::abs(g.kx(ix)) + std::abs(g.kz(iz)))) {
      throw ContractViolation("evolve_U13: k U1 + l U3 = 0 violated");
    }
  });
  LinearState3D out = state;
  out.t = t;
  if (state.nu == 0.0) return out;
  const double t0 = state.t, nu = state.nu;
  out.u.apply_symbol([&](int k, double eta, int l) { return Complex(std::exp(-viscous_exponent(k, eta, t0, t, nu, l)), 0.0); });
  return out;
}

SpectralField liftup_zero_modes(const SpectralField& u0_in, double nu, double t) {
  require_vector3(u0_in, "liftup_zero_modes");
  const GridSpec& g = u0_in.grid();
  for (int c = 0; c < 3; ++c)
    for (int ix = 1; ix < g.nx; ++ix)
      for (int iy = 0; iy < g.ny; ++iy)
        for (int iz = 0; iz < g.nz; ++iz)
          if (std::abs(u0_in.at(c, ix, iy, iz)) > 0.0) throw ContractViolation("liftup_zero_modes: input depends on x");
  SpectralField out = u0_in;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int iz = 0; iz < g.nz; ++iz) {
      const double eta = g.eta(iy), l = g.kz(iz);
      const double heat = std::exp(-nu * (eta * eta + l * l) * t);
      out.at(0, 0, iy, iz) = heat * (u0_in.at(0, 0, iy, iz) - t * u0_in.at(1, 0, iy, iz));
      out.at(1, 0, iy, iz) = heat * u0_in.at(1, 0, iy, iz);
      out.at(2, 0, iy, iz) = heat * u0_in.at(2, 0, iy, iz);
    }
  }
  return out;
}

void resolvent_integrals(double k, double eta, double l, double t, double& i1, double& i2) {
  const double a = k * k + l * l;
  if (k == 0.0) {
    const double m = eta * eta + l * l;
    i1 = t / m;
    i2 = t / (m * m);
    return;
  }
  const double sa = std::sqrt(a);
  const double x0 = eta, x1 = eta - k * t;
  i1 = (std::atan(x0 / sa) - std::atan(x1 / sa)) / (k * sa);
  auto G = [&](double x) { return x / (2.0 * a * (a + x * x)) + std::atan(x / sa) / (2.0 * a * sa); };
  i2 = (G(x0) - G(x1)) / k;
}

LinearState3D evolve_linear3d(const LinearState3D& initial, double t) {
  require_vector3(initial.u, "evolve_linear3d");
  if (initial.t != 0.0) throw ArgumentError("evolve_linear3d: initial state must be at t = 0");
  if (t < 0.0) throw ArgumentError("evolve_linear3d: t must be >= 0");
  const GridSpec& g = initial.u.grid();
  LinearState3D out{t, SpectralField(g, 3), initial.nu};
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    const double k = g.kx(ix), eta = g.eta(iy), l = g.kz(iz);
    const double m0 = symbol_sq(k, eta, 0.0, l);
    if (m0 == 0.0) return;
    const double heat = initial.nu == 0.0 ? 1.0 : std::exp(-viscous_exponent(k, eta, 0.0, t, initial.nu, l));
    const Complex q = -m0 * initial.u.at(1, ix, iy, iz);
    double i1 = 0.0, i2 = 0.0;
    resolvent_integrals(k, eta, l, t, i1, i2);
    out.u.at(0, ix, iy, iz) = heat * (initial.u.at(0, ix, iy, iz) + q * (i1 - 2.0 * k * k * i2));
    out.u.at(1, ix, iy, iz) = -heat * q / symbol_sq(k, eta, t, l);
    out.u.at(2, ix, iy, iz) = heat * (initial.u.at(2, ix, iy, iz) - 2.0 * k * l * q * i2);
  });
  return out;
}

SpectralField curl(const SpectralField& u, double t) {
  require_vector3(u, "curl");
  const GridSpec& g = u.grid();
  SpectralField w(g, 3);
  const Complex i(0.0, 1.0);
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    const double x = g.kx(ix), y = g.eta(iy) - x * t, z = g.kz(iz);
    const Complex a = u.at(0, ix, iy, iz), b = u.at(1, ix, iy, iz), c = u.at(2, ix, iy, iz);
    w.at(0, ix, iy, iz) = i * (y * c - z * b);
    w.at(1, ix, iy, iz) = i * (z * a - x * c);
    w.at(2, ix, iy, iz) = i * (x * b - y * a);
  });
  return w;
}

Diagnostics diagnostics(const LinearState3D& s) {
  Diagnostics d;
  d.t = s.t;
  const SpectralField u2 = s.u.extract(1);
  d.norm_u2_neq = spectral::l2_norm(spectral::project_nonzero(u2));
  d.norm_p = spectral::l2_norm(pressure_from_U2(u2, s.t));
  d.norm_u1_neq = spectral::l2_norm(spectral::project_nonzero(s.u.extract(0)));
  d.norm_u3_neq = spectral::l2_norm(spectral::project_nonzero(s.u.extract(2)));
  d.norm_curl_u = spectral::l2_norm(curl(s.u, s.t));
  d.norm_u1_zero = spectral::l2_norm(spectral::project_zero(s.u.extract(0)));
  return d;
}

std::vector<Diagnostics> trajectory(const LinearState3D& initial, std::span<const double> times) {
  std::vector<Diagnostics> out;
  for (double t : times) out.push_back(diagnostics(evolve_linear3d(initial, t)));
  return out;
}

}  // namespace couette::linear3d
