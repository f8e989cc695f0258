#include "couette/streak25d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "couette/errors.hpp"
#include "couette/norms.hpp"
#include "couette/parallel.hpp"
#include "couette/transform.hpp"

namespace couette::streak25d {

using spectral::Complex;

namespace {

double lap(int l, double eta) { return double(l) * l + eta * eta; }

struct Rhs {
  SpectralField d_omega;
  SpectralField d_u1;
  double max_speed = 0.0;
};

// Explicit part: advection of omega and u1 by (u2, u3), plus the -u2 forcing of u1.
Rhs explicit_terms(const SpectralField& omega, const SpectralField& u1) {
  const GridSpec& g = omega.grid();
  const std::size_t n = g.size();
  std::array<std::vector<Complex>, 6> d;  // u2, u3, w_y, w_z, u1_y, u1_z
  for (auto& v : d) v.assign(n, Complex{});
  SpectralField forcing(g, 1);
  spectral::for_each_mode(g, [&](int iz, int iy, int) {
    const int l = g.kx(iz);
    const double eta = g.eta(iy);
    const double m = lap(l, eta);
    const std::size_t i = g.index(iz, iy);
    const Complex w = omega.at(0, iz, iy), a = u1.at(0, iz, iy);
    const Complex phi = m == 0.0 ? Complex{} : -w / m;
    const Complex u2 = -Complex(0.0, l) * phi;
    forcing.at(0, iz, iy) = -u2;
    if (!g.retained(iz, iy)) return;
    d[0][i] = u2;
    d[1][i] = Complex(0.0, eta) * phi;
    d[2][i] = Complex(0.0, eta) * w;
    d[3][i] = Complex(0.0, l) * w;
    d[4][i] = Complex(0.0, eta) * a;
    d[5][i] = Complex(0.0, l) * a;
  });
  for (auto& v : d) spectral::fft_inverse_inplace(g, v);
  std::vector<Complex> aw(n), au(n);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u2 = d[0][i].real(), u3 = d[1][i].real();
    aw[i] = Complex(-(u2 * d[2][i].real() + u3 * d[3][i].real()), 0.0);
    au[i] = Complex(-(u2 * d[4][i].real() + u3 * d[5][i].real()), 0.0);
    vmax = std::max(vmax, u2 * u2 + u3 * u3);
  }
  Rhs r{spectral::from_physical(g, std::move(aw)), spectral::from_physical(g, std::move(au)), std::sqrt(vmax)};
  r.d_omega.dealias();
  r.d_u1.dealias();
  r.d_u1 += forcing;
  return r;
}

SpectralField heat(const SpectralField& f, double h, double nu) {
  SpectralField out = f;
  out.apply_symbol([&](int l, double eta, int) { return Complex(std::exp(-nu * lap(l, eta) * h), 0.0); });
  return out;
}

double speed_limit(const GridSpec& g, double speed) {
  return speed > 0.0 ? 0.5 * std::min(g.dx(), g.dy()) / speed : std::numeric_limits<double>::infinity();
}

}  // namespace

SpectralField velocity_yz(const SpectralField& omega) {
  const GridSpec& g = omega.grid();
  SpectralField u(g, 2);
  spectral::for_each_mode(g, [&](int iz, int iy, int) {
    const int l = g.kx(iz);
    const double eta = g.eta(iy), m = lap(l, eta);
    if (m == 0.0) return;
    const Complex phi = -omega.at(0, iz, iy) / m;
    u.at(0, iz, iy) = -Complex(0.0, l) * phi;
    u.at(1, iz, iy) = Complex(0.0, eta) * phi;
  });
  return u;
}

double cfl_limit(const StreakState& s) {
  const SpectralField u = velocity_yz(s.omega);
  double vmax = 0.0;
  const auto a = spectral::to_physical(u, 0), b = spectral::to_physical(u, 1);
  for (std::size_t i = 0; i < a.size(); ++i) vmax = std::max(vmax, a[i].real() * a[i].real() + b[i].real() * b[i].real());
  return speed_limit(s.omega.grid(), std::sqrt(vmax));
}

StreakState streak_step(const StreakState& s, double h) {
  const double nu = s.nu;
  const Rhs k1 = explicit_terms(s.omega, s.u1);
  const double lim = speed_limit(s.omega.grid(), k1.max_speed);
  if (h > lim * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "streak: dt = " << h << " exceeds the CFL bound " << lim;
    throw StepSizeError(os.str(), s.t);
  }
  auto axpy = [](const SpectralField& base, const SpectralField& d, double c) {
    SpectralField out = d;
    out *= c;
    out += base;
    return out;
  };
  const SpectralField ew = heat(s.omega, 0.5 * h, nu), eu = heat(s.u1, 0.5 * h, nu);
  const SpectralField w2 = heat(axpy(s.omega, k1.d_omega, 0.5 * h), 0.5 * h, nu);
  const SpectralField a2 = heat(axpy(s.u1, k1.d_u1, 0.5 * h), 0.5 * h, nu);
  const Rhs k2 = explicit_terms(w2, a2);
  const SpectralField w3 = axpy(ew, k2.d_omega, 0.5 * h), a3 = axpy(eu, k2.d_u1, 0.5 * h);
  const Rhs k3 = explicit_terms(w3, a3);
  const SpectralField efw = heat(s.omega, h, nu), efu = heat(s.u1, h, nu);
  const SpectralField w4 = axpy(efw, heat(k3.d_omega, 0.5 * h, nu), h);
  const SpectralField a4 = axpy(efu, heat(k3.d_u1, 0.5 * h, nu), h);
  const Rhs k4 = explicit_terms(w4, a4);
  auto combine = [&](const SpectralField& ef, const SpectralField& d1, const SpectralField& d2, const SpectralField& d3,
                     const SpectralField& d4) {
    SpectralField mid = d2;
    mid += d3;
    SpectralField acc = heat(d1, h, nu);
    acc += 2.0 * heat(mid, 0.5 * h, nu);
    acc += d4;
    acc *= h / 6.0;
    acc += ef;
    return acc;
  };
  StreakState out{s.t + h, combine(efw, k1.d_omega, k2.d_omega, k3.d_omega, k4.d_omega),
                  combine(efu, k1.d_u1, k2.d_u1, k3.d_u1, k4.d_u1), nu};
  if (!out.omega.all_finite() || !out.u1.all_finite()) throw DivergenceError("streak: non-finite solution", out.t);
  return out;
}

namespace {
StreakSample sample(const StreakState& s) {
  const SpectralField u = velocity_yz(s.omega);
  return {s.t, spectral::l2_norm(s.u1), spectral::l2_norm(u.extract(0)), 0.5 * spectral::l2_norm_sq(u)};
}
}  // namespace

StreakRun streak_run(const StreakState& initial, const StreakRunConfig& cfg) {
  if (!(initial.nu > 0.0)) throw ConfigError("streak: nu must be positive");
  if (!(cfg.dt_max > 0.0) || cfg.t_max < initial.t) throw ConfigError("streak: invalid time stepping configuration");
  StreakRun run;
  StreakState s = initial;
  s.omega.dealias();
  s.u1.dealias();
  auto consider = [&](const StreakState& st, bool store) {
    const StreakSample smp = sample(st);
    if (smp.norm_u1 > run.max_u1) {
      run.max_u1 = smp.norm_u1;
      run.argmax_t = smp.t;
    }
    if (store) run.samples.push_back(smp);
  };
  consider(s, true);
  double next_sample = cfg.sample_dt > 0.0 ? s.t + cfg.sample_dt : 0.0;
  while (s.t < cfg.t_max - 1e-12 * std::max(1.0, cfg.t_max)) {
    double h = std::min(cfg.dt_max, cfg.cfl_safety * cfl_limit(s));
    h = std::min(h, cfg.t_max - s.t);
    if (cfg.sample_dt > 0.0) h = std::min(h, next_sample - s.t);
    if (h < cfg.dt_min) throw StepSizeError("streak: CFL step below dt_min", s.t);
    s = streak_step(s, h);
    ++run.steps;
    bool store = cfg.sample_dt <= 0.0;
    if (cfg.sample_dt > 0.0 && s.t >= next_sample - 1e-12 * std::max(1.0, s.t)) {
      store = true;
      next_sample += cfg.sample_dt;
    }
    consider(s, store);
  }
  run.final_state = std::move(s);
  return run;
}

StreakState default_streak_data(const GridSpec& g, double eps, double nu, std::uint64_t seed, double noise) {
  SpectralField phi(g, 1);
  phi.set_real_mode(0, 1, 0, 0, 0.5);
  SpectralField rnd(g, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  spectral::for_each_mode(g, [&](int iz, int iy, int) {
    const double re = gauss(rng), im = gauss(rng);
    const int l = g.kx(iz), j = g.jy(iy);
    if (std::abs(l) > 3 || std::abs(j) > 3 || (l == 0 && j == 0) || !g.retained(iz, iy)) return;
    rnd.at(0, iz, iy) = Complex(re, im) / (1.0 + lap(l, g.eta(iy)));
  });
  rnd.enforce_reality();
  auto energy = [&](const SpectralField& p) {
    SpectralField w = p;
    w.apply_symbol([](int l, double eta, int) { return Complex(-lap(l, eta), 0.0); });
    return spectral::l2_norm(velocity_yz(w));
  };
  const double e_main = energy(phi), e_rnd = energy(rnd);
  if (e_rnd > 0.0) {
    rnd *= std::sqrt(noise) * e_main / e_rnd;
    phi += rnd;
  }
  SpectralField omega = phi;
  omega.apply_symbol([](int l, double eta, int) { return Complex(-lap(l, eta), 0.0); });
  const double n = spectral::l2_norm(velocity_yz(omega));
  if (n > 0.0) omega *= eps / n;
  return {0.0, omega, SpectralField(g, 1), nu};
}

std::vector<ScanCell> streak_growth_scan(const GridSpec& g, const std::vector<double>& eps_values,
                                         const std::vector<double>& nu_values, int jobs, std::uint64_t seed) {
  std::vector<ScanCell> cells;
  for (double nu : nu_values)
    for (double eps : eps_values) cells.push_back({eps, nu, 0.0, 0.0, eps / nu <= 0.5});
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    ScanCell& c = cells[i];
    if (c.eps == 0.0) return;
    StreakRunConfig rc;
    rc.nu = c.nu;
    rc.t_max = 2.0 / c.nu;
    rc.dt_max = 0.02 / c.nu;
    const StreakRun r = streak_run(default_streak_data(g, c.eps, c.nu, seed), rc);
    c.max_u1 = r.max_u1;
    c.argmax_t = r.argmax_t;
  });
  return cells;
}

}  // namespace couette::streak25d
