#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "couette/errors.hpp"
#include "couette/fit.hpp"
#include "couette/initial_data.hpp"
#include "couette/linear2d.hpp"
#include "couette/nonlinear2d.hpp"
#include "couette/norms.hpp"
#include "couette/transform.hpp"
#include "oracles.hpp"

using namespace couette;
using namespace couette::nonlinear2d;
constexpr double kPi = std::numbers::pi;

namespace {

SpectralField smooth_data(const GridSpec& g, unsigned seed, int kmax = -1, int jmax = -1) {
  spectral::RandomFieldSpec rs;
  rs.seed = seed;
  rs.kmax = kmax;
  rs.jmax = jmax;
  return spectral::random_field(g, rs);
}

SolverConfig2D config(GridSpec g, double nu, double t_max, double dt = 0.02) {
  SolverConfig2D c;
  c.grid = g;
  c.nu = nu;
  c.t_max = t_max;
  c.dt = dt;
  return c;
}

double rel(const SpectralField& a, const SpectralField& b) { return spectral::l2_norm(a - b) / spectral::l2_norm(b); }

// Long small-amplitude inviscid run on 8 x 1024 (T_res = 85), shared by several tests.
const Trajectory& long_inviscid_run() {
  static const Trajectory tr = [] {
    const auto g = GridSpec::make2d(8, 1024, 2 * kPi);
    auto c = config(g, 0.0, 80.0);
    c.sample_dt = 1.0;
    c.epsilon = 1e-3;
    return solve(smooth_data(g, 5), c);
  }();
  return tr;
}

}  // namespace

TEST(NonlinearTerm, VanishesOnShearFlows) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 0, 3, 0, Complex(0.4, 0.1));
  w.set_real_mode(0, 0, 7, 0, Complex(-0.2, 0.3));
  EXPECT_LT(nonlinear_term(w, 1.3).max_abs(), 1e-15);
  const auto out = step(w, 0.0, config(g, 0.0, 1.0));
  for (std::size_t i = 0; i < w.data().size(); ++i) EXPECT_NEAR(std::abs(out.data()[i] - w.data()[i]), 0.0, 1e-16);
}

TEST(NonlinearTerm, MatchesPhysicalSpaceJacobian) {
  // Phi_Y Omega_X - Phi_X Omega_Y evaluated pointwise from the synthesis formula.
  const auto g = GridSpec::make2d(16, 16, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 1, 0, 0, Complex(0.5, 0.0));
  w.set_real_mode(0, 0, 1, 0, Complex(0.0, 0.5));
  const double t = 0.0;
  // Phi = -w / |xi|^2 = -w for these unit modes: Omega = cos X - sin Y, Phi = -cos X + sin Y.
  const auto n = nonlinear_term(w, t);
  const auto p = spectral::inverse_transform(n);
  for (int ix : {0, 3, 7}) {
    for (int iy : {1, 5}) {
      const double x = ix * g.dx(), y = iy * g.dy();
      const double phi_x = std::sin(x), phi_y = std::cos(y), om_x = -std::sin(x), om_y = -std::cos(y);
      EXPECT_NEAR(p.values[g.index(ix, iy)], phi_y * om_x - phi_x * om_y, 1e-14);
    }
  }
}

TEST(Step, SmallAmplitudeMatchesLinearPropagator) {
  const auto g = GridSpec::make2d(16, 128, 2 * kPi);
  const auto w = smooth_data(g, 2);
  const auto c = config(g, 1e-3, 1.0, 0.05);
  std::vector<double> err;
  for (double eps : {1e-2, 5e-3}) {
    SpectralField a = w;
    a *= eps;
    const auto nl = step(a, 0.0, c);
    const auto lin = linear2d::evolve_linear2d({0.0, a, c.nu}, c.dt).omega;
    err.push_back(spectral::l2_norm(nl - lin) / eps);
  }
  // nonlinear correction per unit amplitude is O(eps dt)
  EXPECT_NEAR(err[0] / err[1], 2.0, 0.05);
  EXPECT_LT(err[0], 1e-2 * c.dt);
}

TEST(Step, FourthOrderSelfConvergence) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  auto w = smooth_data(g, 4);
  w *= 0.1;
  auto run = [&](double dt) {
    auto c = config(g, 1e-3, 2.0, dt);
    c.check_cfl = false;
    c.sample_times = {2.0};
    return solve(w, c).final_omega;
  };
  const auto a = run(0.1), b = run(0.05), c = run(0.025);
  const double r = spectral::l2_norm(a - b) / spectral::l2_norm(b - c);
  EXPECT_GT(r, 8.0);
  EXPECT_LT(r, 32.0);
}

TEST(Step, CflViolationIsStepSizeError) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  auto w = smooth_data(g, 4);
  w *= 100.0;
  try {
    step(w, 0.0, 1.0, config(g, 0.0, 2.0));
    FAIL() << "expected StepSizeError";
  } catch (const StepSizeError& e) {
    EXPECT_EQ(e.time(), 0.0);
  }
}

TEST(Solve, ResolutionGuard) {
  const auto g = GridSpec::make2d(16, 256, 2 * kPi);
  EXPECT_NEAR(resolution_horizon(g), 0.5 * 85 / 5, 1e-14);
  EXPECT_THROW(solve(smooth_data(g, 1), config(g, 0.0, 9.0)), ResolutionError);
  auto c = config(g, 0.0, 0.1);
  c.epsilon = 1e-3;
  EXPECT_NO_THROW(solve(smooth_data(g, 1), c));
}

TEST(Solve, ZeroDataStaysZero) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  auto c = config(g, 1e-2, 2.0);
  c.epsilon = 0.0;
  const auto tr = solve(smooth_data(g, 1), c);
  for (const auto& s : tr.samples) {
    EXPECT_EQ(s.energy, 0.0);
    EXPECT_EQ(s.norm_omega_neq, 0.0);
  }
}

TEST(Solve, InviscidBudgetConserved) {
  const auto g = GridSpec::make2d(16, 256, 2 * kPi);
  auto c = config(g, 0.0, 8.0);
  c.sample_dt = 0.5;
  c.epsilon = 0.3;
  const auto tr = solve(smooth_data(g, 6, 4, 20), c);
  const double e0 = tr.energy_budget(0), z0 = tr.samples[0].enstrophy;
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    EXPECT_LT(std::abs(tr.energy_budget(i) - e0) / e0, 1e-6) << tr.samples[i].t;
    EXPECT_LT(std::abs(tr.samples[i].enstrophy - z0) / z0, 1e-6) << tr.samples[i].t;
  }
}

TEST(Solve, ViscousBudgetsNonincreasing) {
  const auto g = GridSpec::make2d(16, 256, 2 * kPi);
  auto c = config(g, 1e-3, 8.0);
  c.sample_dt = 0.25;
  c.epsilon = 0.3;
  const auto tr = solve(smooth_data(g, 6, 4, 20), c);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    EXPECT_LE(tr.energy_budget(i), tr.energy_budget(i - 1) * (1 + 1e-12));
    EXPECT_LE(tr.samples[i].enstrophy, tr.samples[i - 1].enstrophy * (1 + 1e-12));
  }
  // E + P + D is the conserved combination
  const auto& last = tr.samples.back();
  EXPECT_NEAR(tr.energy_budget(tr.samples.size() - 1) + last.dissipation, tr.energy_budget(0), 1e-6 * tr.energy_budget(0));
}

TEST(Solve, InviscidDampingAtSmallAmplitude) {
  const auto& tr = long_inviscid_run();
  std::vector<double> t, u2;
  for (const auto& s : tr.samples) {
    t.push_back(s.t);
    u2.push_back(s.norm_u2);
  }
  const double p = fit_power_law(t, u2, {10, 80}).exponent;
  EXPECT_GE(p, -2.3);
  EXPECT_LE(p, -1.7);
}

TEST(Solve, EnhancedDissipationAtThreeTimescales) {
  const auto g = GridSpec::make2d(8, 1024, 2 * kPi);
  const double nu = 1e-4, t = 3.0 * std::cbrt(1.0 / nu);
  auto c = config(g, nu, t);
  c.sample_times = {t};
  c.epsilon = 1e-3;
  const auto tr = solve(smooth_data(g, 5), c);
  EXPECT_LT(tr.samples.back().norm_omega_neq, 0.5 * tr.samples.front().norm_omega_neq);
}

TEST(Metastability, DistanceIsNonzeroVelocityNorm) {
  const auto& tr = long_inviscid_run();
  const auto rep = metastability_report(tr, 5.0, 80.0);
  ASSERT_FALSE(rep.t.empty());
  for (std::size_t i = 0; i < rep.t.size(); ++i) {
    const auto it = std::find_if(tr.samples.begin(), tr.samples.end(), [&](const Sample& s) { return s.t == rep.t[i]; });
    ASSERT_NE(it, tr.samples.end());
    EXPECT_DOUBLE_EQ(rep.distance[i], it->norm_u_neq);
  }
  EXPECT_LE(rep.envelope_constant, 10.0);
  EXPECT_GT(rep.envelope_constant, 0.0);
}

TEST(Metastability, ShearDataHasZeroDistance) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 0, 2, 0, Complex(0.3, 0.0));
  auto c = config(g, 1e-3, 3.0);
  const auto rep = metastability_report(solve(w, c));
  for (double d : rep.distance) EXPECT_EQ(d, 0.0);
}

TEST(Psi, ZeroShearGivesZeroPsi) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 1, 2, 0, Complex(1e-3, 0.0));  // no k = 0 content, at tiny amplitude
  auto c = config(g, 0.0, 2.0);
  c.epsilon = 0.0;
  for (const auto& s : psi_solve(solve(w, c))) {
    for (auto v : s.psi) EXPECT_EQ(v, Complex{});
    for (auto v : s.g) EXPECT_EQ(v, Complex{});
  }
}

TEST(Psi, SteadyShearInviscid) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 0, 2, 0, Complex(0.3, 0.2));
  const auto tr = solve(w, config(g, 0.0, 3.0));
  const auto psi = psi_solve(tr);
  const auto& u0 = tr.samples.front().u0_profile;
  for (const auto& s : psi) {
    for (std::size_t i = 0; i < u0.size(); ++i) {
      EXPECT_NEAR(std::abs(s.psi[i] - u0[i]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(s.g[i]), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(s.h[i] - s.t * u0[i]), 0.0, 1e-12);
    }
  }
}

TEST(Psi, ResidualOnNonlinearRun) {
  const auto g = GridSpec::make2d(16, 256, 2 * kPi);
  auto c = config(g, 1e-3, 4.0, 0.01);
  c.sample_dt = 0.01;
  c.epsilon = 0.3;
  const auto tr = solve(smooth_data(g, 8, 4, 20), c);
  const auto psi = psi_solve(tr);
  EXPECT_LT(psi_residual(tr, psi), 1e-8);
}

TEST(Echo, FindPeaks) {
  std::vector<double> t, v;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(0.05 * i);
    v.push_back(std::exp(-std::pow(t.back() - 5, 2)) + 0.5 * std::exp(-std::pow(t.back() - 15, 2)));
  }
  const auto p = find_peaks(t, v);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].t, 5.0, 1e-12);
  EXPECT_NEAR(p[1].t, 15.0, 1e-12);
}

TEST(Echo, PeaksAtCriticalTimes) {
  EchoConfig cfg;
  const auto rec = echo_experiment(cfg);
  ASSERT_EQ(rec.predicted_times.size(), 2u);
  EXPECT_NEAR(rec.predicted_times[0], 10.0, 1e-12);
  EXPECT_NEAR(rec.predicted_times[1], 20.0, 1e-12);
  bool first = false;
  for (const auto& p : rec.peaks) first = first || std::abs(p.t - 10.0) <= 1.0;
  EXPECT_TRUE(first);
  const auto second = secondary_peak(rec, 15.0);
  EXPECT_NEAR(second.t, 20.0, 2.0);

  cfg.kappa = 0.0;
  EXPECT_LT(secondary_peak(echo_experiment(cfg), 15.0).t, 0.0);
}

TEST(Echo, EchoGrowsWithLowModeAmplitude) {
  double prev = 0.0;
  for (double kappa : {0.01, 0.02, 0.05}) {
    EchoConfig cfg;
    cfg.kappa = kappa;
    const auto rec = echo_experiment(cfg);
    EXPECT_GT(rec.measured_echo_amp, prev);
    prev = rec.measured_echo_amp;
    if (kappa == 0.01) EXPECT_NEAR(rec.measured_echo_amp / rec.chain_echo_amp, 1.0, 0.25);
  }
}

TEST(Echo, ResolutionChecked) {
  EchoConfig cfg;
  cfg.grid = GridSpec::make2d(16, 32, 2 * kPi);
  EXPECT_THROW(echo_experiment(cfg), ResolutionError);
}
