#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "couette/errors.hpp"
#include "couette/linear2d.hpp"
#include "couette/multipliers.hpp"
#include "couette/norms.hpp"
#include "oracles.hpp"

using namespace couette;
using namespace couette::multipliers;
using spectral::GridSpec;
using spectral::NormSpec;
using spectral::SpectralField;

namespace {

const double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

SpectralField single_mode(const GridSpec& g, int k, int j) {
  SpectralField f(g);
  f.set_real_mode(0, k, j, 0, {1.0, 0.0});
  return f;
}

}  // namespace

TEST(Ghost, HandValues) {
  EXPECT_DOUBLE_EQ(ghost_M(0.0, 1, 5.0, 1e-3).m, 1.0);
  EXPECT_DOUBLE_EQ(ghost_M(0.0, -3, 7.0, 1e-2).m, 1.0);
  EXPECT_NEAR(ghost_M(1e12, 1, 0.0, 1e-3).m, std::exp(-kPi / 2), 1e-9);
  EXPECT_NEAR(std::exp(-kPi / 2), 0.20788, 1e-5);
  EXPECT_THROW(ghost_M(1.0, 0, 1.0, 1e-3), ArgumentError);
  EXPECT_THROW(ghost_M(1.0, 1, 1.0, 0.0), ArgumentError);
  EXPECT_THROW(GhostMultiplier(-1.0), ArgumentError);
}

TEST(Ghost, UniformBounds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lt(-2, 8), le(-6, 6), ln(-6, -1);
  std::uniform_int_distribution<int> kd(-6, 6);
  double lo = 1.0;
  for (int i = 0; i < 100000; ++i) {
    int k = kd(rng);
    if (k == 0) k = 1;
    const double eta = std::copysign(std::pow(10.0, le(rng)), le(rng)), t = std::pow(10.0, lt(rng));
    const auto g = ghost_M(t, k, eta, std::pow(10.0, ln(rng)));
    ASSERT_LE(g.m, 1.0);
    ASSERT_LE(g.mdot, 0.0);
    lo = std::min(lo, g.m);
  }
  EXPECT_GE(lo, std::exp(-kPi));
  EXPECT_LT(lo, 0.1);
}

TEST(Ghost, SatisfiesDefiningOde) {
  for (auto [k, eta, nu] : {std::tuple{1, 10.0, 1e-3}, {2, -30.0, 1e-2}, {3, 400.0, 1e-5}, {-1, 50.0, 1e-4}}) {
    const double c = std::cbrt(nu), tc = eta / k;
    auto rhs = [&](double s, double m) { return -m * c / (1.0 + c * c * (s - tc) * (s - tc)); };
    for (double t : {1.0, std::abs(tc), 3.0 * std::abs(tc) + 1}) {
      const auto g = ghost_M(t, k, eta, nu);
      EXPECT_NEAR(oracle::rk4(rhs, 1.0, 0.0, t, 20000), g.m, 1e-10);
      EXPECT_NEAR(g.mdot, rhs(t, g.m), 1e-15);
      const double h = 1e-4 * std::max(1.0, t);
      const double fd = (ghost_M(t + h, k, eta, nu).m - ghost_M(t - h, k, eta, nu).m) / (2 * h);
      EXPECT_NEAR(fd, g.mdot, 1e-8);
    }
  }
}

TEST(Ghost, NormEquivalence) {
  const auto g = GridSpec::make2d(16, 64, 2 * kPi);
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto f = oracle::random_band(g, 5, 21, seed);
    for (double nu : {1e-2, 1e-5}) {
      const GhostMultiplier m(nu);
      for (double t : {0.0, 3.0, 40.0, 1e4}) {
        const double a = spectral::l2_norm(m.apply(f, t)), b = spectral::l2_norm(f);
        EXPECT_LE(a, b * (1 + 1e-14));
        EXPECT_GE(a, std::exp(-kPi) * b);
      }
    }
  }
  const auto f = oracle::random_band(g, 3, 10, 9);
  const auto mf = GhostMultiplier(1e-3).apply(f, 50.0);
  EXPECT_EQ(spectral::l2_norm(spectral::project_zero(mf) - spectral::project_zero(f)), 0.0);
}

TEST(Mprop, BoundedByCriticalTimeValue) {
  for (double nu : {1e-2, 1e-5}) {
    std::vector<MpropPoint> pts;
    for (int k : {1, 2})
      for (double eta : {0.0, 3.0, 30.0, 300.0}) pts.push_back({eta / k, k, eta});
    EXPECT_LE(mprop_constant(pts, nu), std::exp(kPi / 2) * (1 + 1e-12));
  }
}

TEST(Mprop, FarFromCriticalTimeTransportDominates) {
  const double nu = 1e-4, c = std::cbrt(nu);
  const double t = 10.0 + 100.0 / c;
  const double sq = std::sqrt(nu) * std::hypot(1.0, 10.0 - t);
  EXPECT_GT(sq, std::pow(nu, 1.0 / 6.0) * std::exp(kPi / 2));
  EXPECT_LT(mprop_constant({{t, 1, 10.0}}, nu), 0.02);
}

TEST(Mprop, UniformInViscosity) {
  // In the layer variables the constant depends on nu only through nu^{1/3} |k| at the critical
  // time, so it converges as nu -> 0 to a limit computed from M = e^{-atan x - atan y}.
  const std::vector<int> ks{1, 2, 3, 4};
  const auto ys = linspace(-3, 3, 61), xs = linspace(-20, 20, 201);
  double limit = 0;
  for (int k : ks)
    for (double y : ys)
      for (double x : xs) {
        if (y + x < 0) continue;
        const double m = std::exp(-std::atan(x) - std::atan(y));
        limit = std::max(limit, 1.0 / (m / std::sqrt(1 + x * x) + k * std::abs(x)));
      }
  double prev = 0;
  for (double nu : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto pts = mprop_grid(nu, ks, ys, xs);
    ASSERT_FALSE(pts.empty());
    for (const auto& p : pts) ASSERT_GE(p.t, 0.0);
    const double c = mprop_constant(pts, nu);
    EXPECT_GT(c, prev);
    EXPECT_LE(c, limit * (1 + 1e-12));
    EXPECT_LE(c, std::exp(kPi / 2) * (1 + 1e-12));
    prev = c;
  }
  EXPECT_NEAR(prev / limit, 1.0, 0.1);
}

TEST(EnergyAudit, ZeroDatum) {
  const auto a = ed_energy_audit(SpectralField(GridSpec::make2d(8, 16)), 1e-3);
  EXPECT_EQ(a.initial, 0.0);
  EXPECT_EQ(a.terminal, 0.0);
  EXPECT_EQ(a.ghost, 0.0);
  EXPECT_EQ(a.dissipation, 0.0);
  EXPECT_EQ(a.residual, 0.0);
}

TEST(EnergyAudit, SingleModeIdentityCloses) {
  const auto g = GridSpec::make2d(8, 64, 2 * kPi);
  const auto a = ed_energy_audit(single_mode(g, 1, 10), 1e-3);
  EXPECT_LT(a.residual, 1e-8);
  EXPECT_NEAR(a.initial, 1.0, 1e-15);
  EXPECT_GT(a.ghost, 0.0);
  EXPECT_GT(a.dissipation, 0.0);
  EXPECT_LT(a.terminal, 1e-20);
}

TEST(EnergyAudit, ZeroModeDissipatesOnly) {
  const auto g = GridSpec::make2d(8, 16, 2 * kPi);
  const auto a = ed_energy_audit(single_mode(g, 0, 2), 1e-2, 30.0);
  EXPECT_EQ(a.ghost, 0.0);
  EXPECT_NEAR(a.terminal, std::exp(-2 * 1e-2 * 4 * 30.0), 1e-14);
  EXPECT_LT(a.residual, 1e-10);
  EXPECT_EQ(a.c_nu, 0.0);
}

TEST(EnergyAudit, EnhancedDissipationScaling) {
  const auto g = GridSpec::make2d(8, 32, 2 * kPi);
  SpectralField q0(g);
  q0.set_real_mode(0, 1, 3, 0, {1.0, 0.5});
  q0.set_real_mode(0, 2, -1, 0, {0.3, 0.0});
  q0.set_real_mode(0, 1, 0, 0, {0.0, 0.7});
  std::vector<double> cs;
  for (double nu : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const auto a = ed_energy_audit(q0, nu);
    EXPECT_LT(a.residual, 1e-8) << nu;
    cs.push_back(a.c_nu);
  }
  const auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
  EXPECT_LT(*hi / *lo, 3.0);
}

TEST(EnergyAudit, TrajectoryContract) {
  const auto g = GridSpec::make2d(8, 32, 2 * kPi);
  const auto q0 = oracle::random_band(g, 2, 6, 5);
  const double nu = 1e-2;
  std::vector<std::pair<double, SpectralField>> traj;
  for (double t : {0.0, 1.0, 5.0}) traj.emplace_back(t, linear2d::evolve_linear2d({0.0, q0, nu}, t).omega);
  const auto a = ed_energy_audit(traj, nu);
  EXPECT_NEAR(a.residual, ed_energy_audit(q0, nu).residual, 1e-15);

  auto bad = traj;
  bad[2].second.mode(0, 1, 1) *= 1.001;
  EXPECT_THROW(ed_energy_audit(bad, nu), ContractViolation);
  EXPECT_THROW(ed_energy_audit(traj, 2 * nu), ContractViolation);
  EXPECT_THROW(ed_energy_audit({traj.begin() + 1, traj.end()}, nu), ContractViolation);
  EXPECT_THROW(ed_energy_audit(std::vector<std::pair<double, SpectralField>>{}, nu), ContractViolation);
}

TEST(CascadeNorm, ReducesToGevrey) {
  const auto g = GridSpec::make2d(16, 64, 2 * kPi);
  const auto f = oracle::random_band(g, 4, 20, 3);
  CascadeNorm cn;
  cn.lambda0 = cn.lambda_prime = 0.3;
  cn.s = 0.5;
  cn.use_weights = false;
  for (double t : {0.0, 10.0}) {
    const double a = cascade_norm_eval(f, cn, t), b = spectral::norm(f, NormSpec::gevrey(0.3, 0.5));
    EXPECT_NEAR(a / b, 1.0, 1e-13);
  }
}

TEST(CascadeNorm, CriticalOverNonCriticalIsSupersolutionRatio) {
  const auto g = GridSpec::make2d(16, 64, 2 * kPi);
  const int k = 2, j = 16;
  const auto fc = single_mode(g, k, j), fnc = single_mode(g, k, -j);
  CascadeNorm cn;
  for (double t : {4.0, 8.0, 11.0}) {
    const double ratio = cascade_norm_eval(fc, cn, t) / cascade_norm_eval(fnc, cn, t);
    EXPECT_NEAR(ratio, std::max(1.0, toy_models::supersolution_ratio(t, k, j)), 1e-12 * ratio);
  }
  const double at_tc = cascade_norm_eval(fc, cn, 8.0) / cascade_norm_eval(fnc, cn, 8.0);
  EXPECT_NEAR(at_tc, 16.0 / 4.0, 1e-12);
}

TEST(CascadeNorm, NonincreasingForFrozenField) {
  const auto g = GridSpec::make2d(16, 64, 2 * kPi);
  const auto f = oracle::random_band(g, 5, 21, 8);
  CascadeNorm cn;
  double prev = cascade_norm_eval(f, cn, 0.0);
  for (double t = 0.25; t <= 60; t += 0.25) {
    const double v = cascade_norm_eval(f, cn, t);
    EXPECT_LE(v, prev * (1 + 1e-12)) << t;
    prev = v;
  }
}

TEST(CascadeNorm, OverflowGuard) {
  const auto g = GridSpec::make2d(16, 64, 2 * kPi);
  CascadeNorm cn;
  cn.lambda0 = 400.0;
  cn.s = 1.0;
  EXPECT_THROW(cascade_norm_eval(single_mode(g, 1, 20), cn, 0.0), RangeError);
  EXPECT_GT(cn.symbol(0.0, 1, 1.0), 0.0);
}

TEST(Taxonomy, FourClasses) {
  const auto tax = multiplier_taxonomy();
  ASSERT_EQ(tax.size(), 4u);
  EXPECT_EQ(tax[0].name, "ghost");
  EXPECT_TRUE(tax[0].implemented);
  EXPECT_TRUE(tax[0].bounded_above_below);
  EXPECT_EQ(tax[3].name, "singular limit");
  EXPECT_FALSE(tax[3].implemented);
  for (int i = 0; i < 3; ++i) EXPECT_FALSE(tax[i].representative.empty());
}
