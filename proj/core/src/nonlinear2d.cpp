#include "couette/nonlinear2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "couette/errors.hpp"
#include "couette/linear2d.hpp"
#include "couette/toy_models.hpp"
#include "couette/transform.hpp"

namespace couette::nonlinear2d {

using linear2d::symbol_sq;
using linear2d::viscous_exponent;

double resolution_horizon(const GridSpec& g) {
  return 0.5 * g.eta_max_retained() / std::max(1, g.kmax_retained());
}

double cfl_limit(const GridSpec& g, double max_speed) {
  if (max_speed <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * std::min(g.dx(), g.dy()) / max_speed;
}

SpectralField nonlinear_term(const SpectralField& omega, double t, bool dealias, double* max_speed) {
  const GridSpec& g = omega.grid();
  const std::size_t n = g.size();
  std::array<std::vector<Complex>, 4> d;  // Phi_X, Phi_Y, Omega_X, Omega_Y
  for (auto& v : d) v.assign(n, Complex{});
  spectral::for_each_mode(g, [&](int ix, int iy, int) {
    if (dealias && !g.retained(ix, iy)) return;
    const double k = g.kx(ix), eta = g.eta(iy);
    const double m = symbol_sq(k, eta, t);
    if (m == 0.0) return;
    const Complex w = omega.at(0, ix, iy);
    const Complex phi = -w / m;
    const std::size_t i = g.index(ix, iy);
    d[0][i] = Complex(0.0, k) * phi;
    d[1][i] = Complex(0.0, eta) * phi;
    d[2][i] = Complex(0.0, k) * w;
    d[3][i] = Complex(0.0, eta) * w;
  });
  for (auto& v : d) spectral::fft_inverse_inplace(g, v);
  std::vector<Complex> prod(n);
  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double px = d[0][i].real(), py = d[1][i].real();
    prod[i] = Complex(py * d[2][i].real() - px * d[3][i].real(), 0.0);
    if (max_speed) vmax = std::max(vmax, px * px + py * py);
  }
  if (max_speed) *max_speed = std::sqrt(vmax);
  SpectralField out = spectral::from_physical(g, std::move(prod));
  if (dealias) out.dealias();
  return out;
}

namespace {

SpectralField heat(const SpectralField& f, double t0, double t1, double nu) {
  SpectralField out = f;
  if (nu == 0.0) return out;
  out.apply_symbol([&](int k, double eta, int) { return Complex(std::exp(-viscous_exponent(k, eta, t0, t1, nu)), 0.0); });
  return out;
}

void check_finite(const SpectralField& f, double t) {
  if (!f.all_finite()) throw DivergenceError("nonlinear2d: non-finite vorticity", t);
}

// Integrands of the budget scalars at a single state.
struct Rates {
  double production = 0.0;  // <U^1, U^2>
  double dissipation = 0.0;  // nu ||Omega||^2
  double enstrophy_dissipation = 0.0;  // nu ||grad_L Omega||^2
};

Rates rates(const SpectralField& omega, double t, double nu) {
  const GridSpec& g = omega.grid();
  Rates r;
  spectral::for_each_mode(g, [&](int ix, int iy, int) {
    const double k = g.kx(ix), eta = g.eta(iy);
    const double m = symbol_sq(k, eta, t);
    if (m == 0.0) return;
    const Complex w = omega.at(0, ix, iy);
    const Complex phi = -w / m;
    const Complex u1 = -Complex(0.0, eta - k * t) * phi;
    const Complex u2 = Complex(0.0, k) * phi;
    r.production += (u1 * std::conj(u2)).real();
    r.dissipation += std::norm(w);
    r.enstrophy_dissipation += m * std::norm(w);
  });
  r.dissipation *= nu;
  r.enstrophy_dissipation *= nu;
  return r;
}

struct StepResult {
  SpectralField omega;
  Rates integral;  // int over the step
};

StepResult if_rk4(const SpectralField& w, double t, double h, const SolverConfig2D& cfg, bool with_budget) {
  const double nu = cfg.nu, th = t + 0.5 * h, tf = t + h;
  double speed = 0.0;
  const SpectralField k1 = nonlinear_term(w, t, cfg.dealias, cfg.check_cfl ? &speed : nullptr);
  if (cfg.check_cfl) {
    const double lim = cfl_limit(cfg.grid, speed);
    if (h > lim * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "nonlinear2d: dt = " << h << " exceeds the CFL bound " << lim;
      throw StepSizeError(os.str(), t);
    }
  }
  const SpectralField e_half = heat(w, t, th, nu);
  SpectralField w2 = w;
  {
    SpectralField tmp = k1;
    tmp *= 0.5 * h;
    w2 += tmp;
    w2 = heat(w2, t, th, nu);
  }
  const SpectralField k2 = nonlinear_term(w2, th, cfg.dealias);
  SpectralField w3 = k2;
  w3 *= 0.5 * h;
  w3 += e_half;
  const SpectralField k3 = nonlinear_term(w3, th, cfg.dealias);
  const SpectralField e_full = heat(w, t, tf, nu);
  SpectralField w4 = heat(k3, th, tf, nu);
  w4 *= h;
  w4 += e_full;
  const SpectralField k4 = nonlinear_term(w4, tf, cfg.dealias);

  SpectralField acc = heat(k1, t, tf, nu);
  SpectralField mid = k2;
  mid += k3;
  acc += 2.0 * heat(mid, th, tf, nu);
  acc += k4;
  acc *= h / 6.0;
  acc += e_full;

  StepResult out{std::move(acc), {}};
  if (with_budget) {
    const Rates r1 = rates(w, t, nu), r2 = rates(w2, th, nu), r3 = rates(w3, th, nu), r4 = rates(w4, tf, nu);
    auto simpson = [h](double a, double b, double c, double d) { return h / 6.0 * (a + 2.0 * b + 2.0 * c + d); };
    out.integral.production = simpson(r1.production, r2.production, r3.production, r4.production);
    out.integral.dissipation = simpson(r1.dissipation, r2.dissipation, r3.dissipation, r4.dissipation);
    out.integral.enstrophy_dissipation = simpson(r1.enstrophy_dissipation, r2.enstrophy_dissipation,
                                                 r3.enstrophy_dissipation, r4.enstrophy_dissipation);
  }
  return out;
}

Sample make_sample(const SpectralField& w, double t, const SolverConfig2D& cfg, const Rates& integral) {
  const GridSpec& g = w.grid();
  const SpectralField u = linear2d::biot_savart(w, t);
  Sample s;
  s.t = t;
  const SpectralField u1 = u.extract(0), u2 = u.extract(1);
  const SpectralField u1n = spectral::project_nonzero(u1), u2n = spectral::project_nonzero(u2);
  s.norm_u1_neq = spectral::l2_norm(u1n);
  s.norm_u2 = spectral::l2_norm(u2);
  s.norm_u_neq = std::sqrt(spectral::l2_norm_sq(u1n) + spectral::l2_norm_sq(u2n));
  const SpectralField wn = spectral::project_nonzero(w);
  s.norm_omega_neq = spectral::l2_norm(wn);
  for (const auto& ns : cfg.monitor_norms) s.monitor.push_back(spectral::norm(wn, ns));
  s.norm_u_y = spectral::norm(u, cfg.velocity_norm);
  s.norm_u0 = spectral::l2_norm(spectral::project_zero(u1));
  s.energy = 0.5 * spectral::l2_norm_sq(u);
  s.enstrophy = 0.5 * spectral::l2_norm_sq(w);
  s.production = integral.production;
  s.dissipation = integral.dissipation;
  s.enstrophy_dissipation = integral.enstrophy_dissipation;
  s.u2_by_k.assign(g.nx / 2, 0.0);
  spectral::for_each_mode(g, [&](int ix, int iy, int) {
    const int k = std::abs(g.kx(ix));
    if (k < g.nx / 2) s.u2_by_k[k] += std::norm(u2.at(0, ix, iy));
  });
  for (auto& v : s.u2_by_k) v = std::sqrt(v);
  if (cfg.signal_exclude.empty()) {
    s.norm_u2_signal = s.norm_u2;
  } else {
    SpectralField sig = u2;
    for (const auto& [k, j] : cfg.signal_exclude) {
      sig.mode(0, k, j) = 0.0;
      sig.mode(0, -k, -j) = 0.0;
    }
    s.norm_u2_signal = spectral::l2_norm(sig);
  }
  s.u0_profile.resize(g.ny);
  for (int iy = 0; iy < g.ny; ++iy) s.u0_profile[iy] = u1.at(0, 0, iy);
  return s;
}

std::vector<double> merged_times(const SolverConfig2D& cfg) {
  std::vector<double> ts = cfg.sample_times;
  if (ts.empty()) {
    const int n = static_cast<int>(std::floor(cfg.t_max / cfg.sample_dt + 1e-9));
    for (int i = 0; i <= n; ++i) ts.push_back(i * cfg.sample_dt);
  }
  ts.insert(ts.end(), cfg.snapshot_times.begin(), cfg.snapshot_times.end());
  ts.push_back(0.0);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), ts.end());
  ts.erase(std::remove_if(ts.begin(), ts.end(), [&](double x) { return x < 0.0 || x > cfg.t_max + 1e-12; }), ts.end());
  return ts;
}

bool contains(const std::vector<double>& v, double t) {
  return std::any_of(v.begin(), v.end(), [t](double x) { return std::abs(x - t) < 1e-12; });
}

void validate(const SolverConfig2D& cfg) {
  cfg.grid.validate();
  if (cfg.grid.dims != 2) throw ConfigError("nonlinear2d: 2D grid required");
  if (cfg.nu < 0.0) throw ConfigError("nonlinear2d: nu must be >= 0");
  if (!(cfg.dt > 0.0)) throw ConfigError("nonlinear2d: dt must be positive");
  if (cfg.t_max < 0.0) throw ConfigError("nonlinear2d: t_max must be >= 0");
  if (cfg.sample_times.empty() && !(cfg.sample_dt > 0.0)) throw ConfigError("nonlinear2d: sample_dt must be positive");
  const double tres = resolution_horizon(cfg.grid);
  if (cfg.t_max > tres + 1e-12) {
    std::ostringstream os;
    os << "nonlinear2d: t_max = " << cfg.t_max << " exceeds the resolution horizon T_res = " << tres
       << " of the " << cfg.grid.nx << "x" << cfg.grid.ny << " grid";
    throw ResolutionError(os.str());
  }
}

}  // namespace

SpectralField step(const SpectralField& omega, double t, double h, const SolverConfig2D& cfg) {
  const double tres = resolution_horizon(omega.grid());
  if (t + h > tres + 1e-12) throw ResolutionError("nonlinear2d: step crosses the resolution horizon");
  SpectralField out = if_rk4(omega, t, h, cfg, false).omega;
  check_finite(out, t + h);
  return out;
}

SpectralField step(const SpectralField& omega, double t, const SolverConfig2D& cfg) { return step(omega, t, cfg.dt, cfg); }

Trajectory solve(const SpectralField& omega_in, const SolverConfig2D& cfg) {
  validate(cfg);
  if (omega_in.grid() != cfg.grid || omega_in.components() != 1) {
    throw ConfigError("nonlinear2d: initial vorticity does not match the configured grid");
  }
  Trajectory tr;
  tr.grid = cfg.grid;
  tr.nu = cfg.nu;
  tr.epsilon = cfg.epsilon;
  SpectralField w = omega_in;
  w *= cfg.epsilon;
  if (cfg.dealias) w.dealias();
  w.drop_nyquist();
  tr.norm_initial = spectral::l2_norm(w);
  check_finite(w, 0.0);

  const std::vector<double> times = merged_times(cfg);
  const std::vector<double> snaps = cfg.snapshot_times;
  Rates total;
  double t = 0.0;
  std::size_t next = 0;
  auto record = [&]() {
    if (contains(snaps, t)) tr.snapshots.emplace_back(t, w);
    if (cfg.sample_times.empty() || contains(cfg.sample_times, t) || t == 0.0) {
      tr.samples.push_back(make_sample(w, t, cfg, total));
    }
  };
  while (next < times.size() && times[next] <= 1e-12) ++next;
  record();
  for (; next < times.size(); ++next) {
    const double target = times[next];
    while (t < target - 1e-12) {
      const double remaining = target - t;
      const int nsub = static_cast<int>(std::ceil(remaining / cfg.dt - 1e-9));
      const double h = remaining / std::max(1, nsub);
      StepResult r = if_rk4(w, t, h, cfg, true);
      check_finite(r.omega, t + h);
      w = std::move(r.omega);
      total.production += r.integral.production;
      total.dissipation += r.integral.dissipation;
      total.enstrophy_dissipation += r.integral.enstrophy_dissipation;
      t = (nsub <= 1) ? target : t + h;
    }
    t = target;
    record();
  }
  tr.final_omega = std::move(w);
  tr.final_time = t;
  return tr;
}

// psi diagnostic ------------------------------------------------------------------------------

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 5> kGlx = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                        0.9061798459386640};
constexpr std::array<double, 5> kGlw = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                        0.4786286704993665, 0.2369268850561891};

// Cubic Lagrange interpolation of samples[i0..i0+3] at t.
template <typename T>
T lagrange4(const double* ts, const T* vs, double t) {
  T out{};
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) w *= (t - ts[b]) / (ts[a] - ts[b]);
    out += w * vs[a];
  }
  return out;
}

// d/dt of the cubic through ts[0..3] at t.
template <typename T>
T lagrange4_derivative(const double* ts, const T* vs, double t) {
  T out{};
  for (int a = 0; a < 4; ++a) {
    double total = 0.0;
    for (int c = 0; c < 4; ++c) {
      if (c == a) continue;
      double w = 1.0 / (ts[a] - ts[c]);
      for (int b = 0; b < 4; ++b)
        if (b != a && b != c) w *= (t - ts[b]) / (ts[a] - ts[b]);
      total += w;
    }
    out += total * vs[a];
  }
  return out;
}

}  // namespace

std::vector<PsiSample> psi_solve(const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 4) throw ConfigError("psi_solve: at least 4 samples are required");
  if (s.front().t != 0.0) throw ConfigError("psi_solve: the first sample must be at t = 0");
  const GridSpec& g = traj.grid;
  const std::size_t n = s.size();
  const int ny = g.ny;
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) ts[i] = s[i].t;

  std::vector<PsiSample> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].t = ts[i];
    out[i].h.assign(ny, Complex{});
    out[i].psi.assign(ny, Complex{});
    out[i].g.assign(ny, Complex{});
  }
  std::vector<Complex> local(4);
  for (int iy = 0; iy < ny; ++iy) {
    const double eta = g.eta(iy);
    const double decay = traj.nu * eta * eta;
    Complex h{};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t i0 = std::min(i == 0 ? 0 : i - 1, n - 4);
      for (int a = 0; a < 4; ++a) local[a] = s[i0 + a].u0_profile[iy];
      const double a = ts[i], b = ts[i + 1], half = 0.5 * (b - a), mid = 0.5 * (a + b);
      Complex integral{};
      for (int q = 0; q < 5; ++q) {
        const double sq = mid + half * kGlx[q];
        integral += kGlw[q] * std::exp(-decay * (b - sq)) * lagrange4(&ts[i0], local.data(), sq);
      }
      h = std::exp(-decay * (b - a)) * h + half * integral;
      out[i + 1].h[iy] = h;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Complex u = s[i].u0_profile[iy];
      if (ts[i] == 0.0) {
        for (int a = 0; a < 4; ++a) local[a] = s[a].u0_profile[iy];
        const Complex du = lagrange4_derivative(&ts[0], local.data(), 0.0);
        out[i].psi[iy] = u;
        out[i].g[iy] = 0.5 * (du + decay * u);
      } else {
        out[i].psi[iy] = out[i].h[iy] / ts[i];
        out[i].g[iy] = (u - out[i].psi[iy]) / ts[i];
      }
    }
  }
  return out;
}

double psi_residual(const Trajectory& traj, std::span<const PsiSample> psi) {
  const auto& s = traj.samples;
  if (psi.size() != s.size() || s.size() < 5) throw ConfigError("psi_residual: need >= 5 matching samples");
  const double dt = s[1].t - s[0].t;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (std::abs((s[i].t - s[i - 1].t) - dt) > 1e-9 * std::max(1.0, dt)) {
      throw ConfigError("psi_residual: samples must be uniformly spaced");
    }
  }
  double umax = 0.0;
  for (const auto& x : s)
    for (const auto& v : x.u0_profile) umax = std::max(umax, std::abs(v));
  if (umax == 0.0) return 0.0;
  double worst = 0.0;
  const GridSpec& g = traj.grid;
  for (std::size_t i = 2; i + 2 < s.size(); ++i) {
    for (int iy = 0; iy < g.ny; ++iy) {
      const double eta = g.eta(iy);
      const Complex dh = (psi[i - 2].h[iy] - 8.0 * psi[i - 1].h[iy] + 8.0 * psi[i + 1].h[iy] - psi[i + 2].h[iy]) /
                         (12.0 * dt);
      const Complex r = dh - s[i].u0_profile[iy] + traj.nu * eta * eta * psi[i].h[iy];
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst / umax;
}

MetastabilityReport metastability_report(const Trajectory& traj, double t_lo, double t_hi) {
  MetastabilityReport rep;
  rep.epsilon = traj.norm_initial;
  for (const auto& s : traj.samples) {
    rep.t.push_back(s.t);
    rep.distance.push_back(s.norm_u_neq);
    if (rep.epsilon > 0.0 && s.t >= t_lo && s.t <= t_hi) {
      rep.envelope_constant = std::max(rep.envelope_constant, s.norm_u_neq * std::sqrt(1.0 + s.t * s.t) / rep.epsilon);
    }
  }
  return rep;
}

// echo ---------------------------------------------------------------------------------------

std::vector<Peak> find_peaks(std::span<const double> t, std::span<const double> v, double prominence) {
  std::vector<Peak> peaks;
  const std::size_t n = v.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
    double left = v[i], right = v[i];
    for (std::size_t j = i; j-- > 0;) {
      left = std::min(left, v[j]);
      if (v[j] > v[i]) break;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      right = std::min(right, v[j]);
      if (v[j] > v[i]) break;
    }
    const double base = std::max(left, right);
    if (v[i] - base > prominence * v[i]) peaks.push_back({t[i], v[i]});
  }
  return peaks;
}

Peak secondary_peak(const EchoRecord& rec, double t_after) {
  for (const auto& p : rec.peaks)
    if (p.t > t_after) return p;
  return {-1.0, 0.0};
}

EchoRecord echo_experiment(const EchoConfig& cfg) {
  const GridSpec& g = cfg.grid;
  if (cfg.k_high * cfg.j_high <= 0) throw ConfigError("echo_experiment: need k_H eta_H > 0");
  const double eta_h = cfg.j_high * g.eta_step();
  if (std::abs(cfg.j_high) > g.jmax_retained() || std::abs(cfg.k_high) > g.kmax_retained()) {
    throw ResolutionError("echo_experiment: high mode lies outside the retained band");
  }
  if (std::abs(cfg.k_low) > g.kmax_retained() || std::abs(cfg.j_low) > g.jmax_retained()) {
    throw ResolutionError("echo_experiment: low mode lies outside the retained band");
  }
  if (cfg.nu * eta_h * eta_h * eta_h / (cfg.k_high * cfg.k_high) > 1.0) {
    throw ConfigError("echo_experiment: nu eta_H^3 / k_H^2 must be small");
  }
  SpectralField w(g, 1);
  if (cfg.kappa != 0.0) w.set_real_mode(0, cfg.k_low, cfg.j_low, 0, 0.5 * cfg.kappa);
  w.set_real_mode(0, cfg.k_high, cfg.j_high, 0, 0.5 * cfg.high_amp);

  SolverConfig2D sc;
  sc.grid = g;
  sc.nu = cfg.nu;
  sc.dt = cfg.dt;
  sc.t_max = cfg.t_max;
  sc.sample_dt = cfg.sample_dt;
  sc.signal_exclude = {{cfg.k_low, cfg.j_low}};
  const Trajectory tr = solve(w, sc);

  EchoRecord rec;
  for (const auto& s : tr.samples) {
    rec.t.push_back(s.t);
    rec.u2_total.push_back(s.norm_u2);
    rec.u2_signal.push_back(s.norm_u2_signal);
    rec.u2_by_k.push_back(s.u2_by_k);
  }
  rec.peaks = find_peaks(rec.t, rec.u2_signal);
  for (int k = cfg.k_high; k >= 1; --k) rec.predicted_times.push_back(eta_h / k);
  const int k_echo = cfg.k_high - cfg.k_low;
  if (k_echo != 0 && cfg.j_low == 0) {
    rec.measured_echo_amp = 2.0 * std::abs(tr.final_omega.mode(0, k_echo, cfg.j_high));
    toy_models::EchoChainState st;
    st.eta = eta_h;
    st.kappa = 0.5 * cfg.kappa;
    st.kmax = std::max(cfg.k_high + 1, 2);
    st.amps.assign(st.kmax, Complex{});
    st.amps[cfg.k_high - 1] = 0.5 * cfg.high_amp;
    if (k_echo >= 1 && k_echo <= st.kmax) {
      const auto hist = toy_models::echo_chain_integrate(st, toy_models::LowSpectrum::uniform(st.kappa), cfg.t_max, 2);
      rec.chain_echo_amp = 2.0 * std::abs(hist.amps.back()[k_echo - 1]);
    }
  }
  return rec;
}

}  // namespace couette::nonlinear2d
