#include "couette/multipliers.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "couette/errors.hpp"
#include "couette/linear2d.hpp"
#include "couette/norms.hpp"

namespace couette::multipliers {

using linear2d::symbol_sq;
using linear2d::viscous_exponent;
using spectral::Complex;
using spectral::GridSpec;

GhostValue ghost_M(double t, int k, double eta, double nu) {
  if (k == 0) throw ArgumentError("ghost_M: defined for k != 0 only");
  if (!(nu > 0.0)) throw ArgumentError("ghost_M: nu must be positive");
  const double c = std::cbrt(nu);
  const double tc = eta / k;
  const double m = std::exp(-(std::atan(c * (t - tc)) + std::atan(c * tc)));
  const double d = c * (t - tc);
  return {m, -m * c / (1.0 + d * d)};
}

GhostMultiplier::GhostMultiplier(double nu) : nu_(nu) {
  if (!(nu > 0.0)) throw ArgumentError("GhostMultiplier: nu must be positive");
}

SpectralField GhostMultiplier::apply(const SpectralField& f, double t) const {
  SpectralField out = f;
  out.apply_symbol([&](int k, double eta, int) { return Complex(k == 0 ? 1.0 : ghost_M(t, k, eta, nu_).m, 0.0); });
  return out;
}

std::vector<MpropPoint> mprop_grid(double nu, const std::vector<int>& ks, const std::vector<double>& ys,
                                   const std::vector<double>& xs) {
  const double c = std::cbrt(nu);
  std::vector<MpropPoint> pts;
  for (int k : ks) {
    if (k == 0) continue;
    for (double y : ys) {
      const double eta = k * y / c;
      for (double x : xs) {
        const double t = eta / k + x / c;
        if (t >= 0.0) pts.push_back({t, k, eta});
      }
    }
  }
  return pts;
}

double mprop_constant(const std::vector<MpropPoint>& points, double nu) {
  const double c6 = std::pow(nu, -1.0 / 6.0), sq = std::sqrt(nu);
  double worst = 0.0;
  for (const auto& p : points) {
    const GhostValue g = ghost_M(p.t, p.k, p.eta, nu);
    const double e = p.eta - p.k * p.t;
    const double val = c6 * (std::sqrt(-g.mdot * g.m) + sq * std::sqrt(double(p.k) * p.k + e * e));
    worst = std::max(worst, 1.0 / val);
  }
  return worst;
}

namespace {

struct ModeTerms {
  double terminal = 0.0, ghost = 0.0, diss = 0.0, mq_neq = 0.0;
};

double integrate(const auto& f, double a, double b) {
  if (b <= a) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
}

ModeTerms mode_terms(int k, double eta, int l, double amp2, double nu, double T) {
  ModeTerms m;
  auto q2 = [&](double t) { return amp2 * std::exp(-2.0 * viscous_exponent(k, eta, 0.0, t, nu, l)); };
  if (k == 0) {
    m.terminal = 0.5 * q2(T);
    m.diss = integrate([&](double t) { return nu * symbol_sq(k, eta, t, l) * q2(t); }, 0.0, T);
    return m;
  }
  // Split at the critical time so the quadrature sees the layer.
  const double tc = eta / k;
  auto piecewise = [&](const auto& f) {
    if (tc > 0.0 && tc < T) return integrate(f, 0.0, tc) + integrate(f, tc, T);
    return integrate(f, 0.0, T);
  };
  const double mT = ghost_M(T, k, eta, nu).m;
  m.terminal = 0.5 * mT * mT * q2(T);
  m.ghost = piecewise([&](double t) {
    const GhostValue g = ghost_M(t, k, eta, nu);
    return -g.mdot * g.m * q2(t);
  });
  m.diss = piecewise([&](double t) {
    const double mm = ghost_M(t, k, eta, nu).m;
    return nu * symbol_sq(k, eta, t, l) * mm * mm * q2(t);
  });
  m.mq_neq = piecewise([&](double t) {
    const double mm = ghost_M(t, k, eta, nu).m;
    return mm * mm * q2(t);
  });
  return m;
}

}  // namespace

EnergyAudit ed_energy_audit(const SpectralField& q0, double nu, double t_final) {
  if (!(nu > 0.0)) throw ArgumentError("ed_energy_audit: nu must be positive");
  const GridSpec& g = q0.grid();
  EnergyAudit a;
  if (t_final < 0.0) {
    double tc_max = 0.0;
    spectral::for_each_mode(g, [&](int ix, int iy, int) {
      if (g.kx(ix) != 0 && std::abs(q0.at(0, ix, iy)) > 0.0) tc_max = std::max(tc_max, std::abs(g.eta(iy) / g.kx(ix)));
    });
    t_final = tc_max + std::cbrt(600.0 / nu);
  }
  a.t_final = t_final;
  double q0sq = 0.0, mq = 0.0;
  for (int c = 0; c < q0.components(); ++c) {
    spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
      const double amp2 = std::norm(q0.at(c, ix, iy, iz));
      if (amp2 == 0.0) return;
      q0sq += amp2;
      const ModeTerms m = mode_terms(g.kx(ix), g.eta(iy), g.kz(iz), amp2, nu, t_final);
      a.terminal += m.terminal;
      a.ghost += m.ghost;
      a.dissipation += m.diss;
      mq += m.mq_neq;
    });
  }
  a.initial = 0.5 * q0sq;
  if (q0sq > 0.0) {
    a.residual = std::abs(a.terminal + a.ghost + a.dissipation - a.initial) / a.initial;
    a.c_nu = std::cbrt(nu) * mq / q0sq;
  }
  return a;
}

EnergyAudit ed_energy_audit(const std::vector<std::pair<double, SpectralField>>& trajectory, double nu,
                            double t_final) {
  if (trajectory.empty()) throw ContractViolation("ed_energy_audit: empty trajectory");
  if (trajectory.front().first != 0.0) throw ContractViolation("ed_energy_audit: trajectory must start at t = 0");
  const SpectralField& q0 = trajectory.front().second;
  const double scale = std::max(q0.max_abs(), 1e-300);
  for (const auto& [t, q] : trajectory) {
    if (q.grid() != q0.grid() || q.components() != q0.components()) {
      throw ContractViolation("ed_energy_audit: trajectory samples change shape");
    }
    SpectralField expect = q0;
    expect.apply_symbol([&](int k, double eta, int l) { return Complex(std::exp(-viscous_exponent(k, eta, 0.0, t, nu, l)), 0.0); });
    expect -= q;
    if (expect.max_abs() > 1e-10 * scale) {
      std::ostringstream os;
      os << "ed_energy_audit: sample at t = " << t << " is not the pure linear evolution of the initial datum";
      throw ContractViolation(os.str());
    }
  }
  return ed_energy_audit(q0, nu, t_final);
}

double CascadeNorm::symbol(double t, int k, double eta, int l) const {
  const double xi = spectral::wavenumber_magnitude(k, eta, l);
  const double e = lambda(t) * std::pow(xi, s);
  if (e > 700.0) {
    std::ostringstream os;
    os << "cascade norm weight overflows at xi = (" << k << ", " << eta << ", " << l << ")";
    throw RangeError(os.str());
  }
  const double w = use_weights ? weights.w(t, k, eta) : 1.0;
  return std::exp(e) / w;
}

double cascade_norm_eval(const SpectralField& f, const CascadeNorm& cn, double t) {
  const GridSpec& g = f.grid();
  double sum = 0.0;
  spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
    double amp = 0.0;
    for (int c = 0; c < f.components(); ++c) amp += std::norm(f.at(c, ix, iy, iz));
    if (amp == 0.0) return;
    const double a = cn.symbol(t, g.kx(ix), g.eta(iy), g.kz(iz));
    sum += amp * a * a;
  });
  return std::sqrt(sum);
}

std::vector<TaxonomyEntry> multiplier_taxonomy() {
  return {
      {"ghost", "ghost_M / GhostMultiplier", true, true,
       "e^{-pi} <= M <= 1; encodes enhanced dissipation through -Mdot M"},
      {"nonlinear cascade", "CascadeNorm (1/w from SupersolutionWeights)", true, false,
       "weight grows through each critical time eta/j"},
      {"steady loss/gain", "e^{lambda(t)|grad|^s} via CascadeNorm::lambda", true, false,
       "Gevrey radius decreasing from lambda0 to lambda'"},
      {"singular limit", "", false, false, "no formula available; not constructed"},
  };
}

}  // namespace couette::multipliers
