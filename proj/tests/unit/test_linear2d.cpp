#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "couette/errors.hpp"
#include "couette/initial_data.hpp"
#include "couette/linear2d.hpp"
#include "couette/norms.hpp"
#include "oracles.hpp"

using namespace couette;
using namespace couette::linear2d;
using spectral::Complex;
using spectral::GridSpec;
constexpr double kPi = std::numbers::pi;

namespace {

LinearState2D single_mode(int k, int j, double ly = 2 * kPi, double nu = 0.0) {
  SpectralField w(GridSpec::make2d(16, 128, ly));
  w.set_real_mode(0, k, j, 0, Complex(1.0, 0.0));
  return {0.0, w, nu};
}

double heat_factor_by_quadrature(double k, double eta, double nu, double t0, double t1) {
  return std::exp(-nu * oracle::integrate([&](double s) { return k * k + (eta - k * s) * (eta - k * s); }, t0, t1));
}

}  // namespace

TEST(Linear2D, InviscidEvolutionIsIdentity) {
  spectral::RandomFieldSpec rs;
  const auto w = spectral::random_field(GridSpec::make2d(16, 64), rs);
  const auto out = evolve_linear2d({0.0, w, 0.0}, 37.0);
  for (std::size_t i = 0; i < w.data().size(); ++i) ASSERT_EQ(out.omega.data()[i], w.data()[i]);
}

TEST(Linear2D, ZeroModeIsHeatEquation) {
  const auto s = single_mode(0, 3, 2 * kPi, 0.02);
  const auto out = evolve_linear2d(s, 1.5);
  EXPECT_NEAR(out.omega.mode(0, 0, 3).real(), std::exp(-0.02 * 9.0 * 1.5), 1e-15);
}

TEST(Linear2D, ClosedFormFactorMatchesQuadrature) {
  // k=1, eta=2, nu=0.01 over [0, 2]: exp(-0.01 * 14/3)
  const auto out = evolve_linear2d(single_mode(1, 2, 2 * kPi, 0.01), 2.0);
  const double got = out.omega.mode(0, 1, 2).real();
  EXPECT_NEAR(got, std::exp(-0.01 * 14.0 / 3.0), 1e-15);
  EXPECT_NEAR(got, 0.954405, 1e-6);
  EXPECT_NEAR(got, heat_factor_by_quadrature(1, 2, 0.01, 0, 2), 1e-12);
}

TEST(Linear2D, ViscousExponentAgreesWithQuadratureEverywhere) {
  for (double k : {-3.0, -1.0, 0.0, 1.0, 4.0}) {
    for (double eta : {-20.0, 0.0, 0.5, 30.0}) {
      for (auto [t0, t1] : {std::pair{0.0, 1.0}, {3.0, 40.0}, {10.0, 10.5}}) {
        const double closed = std::exp(-viscous_exponent(k, eta, t0, t1, 1e-3));
        EXPECT_NEAR(closed, heat_factor_by_quadrature(k, eta, 1e-3, t0, t1), 1e-11) << k << " " << eta;
      }
    }
  }
}

TEST(Linear2D, BackwardEvolutionRejected) {
  auto s = single_mode(1, 1);
  s.t = 2.0;
  EXPECT_THROW(evolve_linear2d(s, 1.0), ArgumentError);
}

TEST(Linear2D, PropagatorComposes) {
  spectral::RandomFieldSpec rs;
  rs.seed = 3;
  const LinearState2D s{0.0, spectral::random_field(GridSpec::make2d(16, 64), rs), 1e-3};
  const auto a = evolve_linear2d(evolve_linear2d(s, 7.0), 19.0);
  const auto b = evolve_linear2d(s, 19.0);
  const double err = spectral::l2_norm(a.omega - b.omega);
  EXPECT_LT(err, 1e-12 * spectral::l2_norm(b.omega));
}

TEST(BiotSavart, VerticalVelocityForPureXMode) {
  const auto g = GridSpec::make2d(8, 16, 2 * kPi);
  SpectralField w(g);
  w.mode(0, 1, 0) = Complex(0.3, 0.4);
  const auto u = biot_savart(w, 0.0);
  EXPECT_NEAR(std::abs(u.mode(0, 1, 0)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(u.mode(1, 1, 0) - Complex(0, -1) * Complex(0.3, 0.4)), 0.0, 1e-16);
}

TEST(BiotSavart, ShearModesFromCurlIdentity) {
  // Omega = d_X U2 - (d_Y - t d_X) U1; for k = 0 this gives hat Omega = -i eta hat U1.
  const auto g = GridSpec::make2d(8, 16, 2 * kPi);
  SpectralField w(g);
  w.set_real_mode(0, 0, 3, 0, Complex(0.2, -0.1));
  const auto u = biot_savart(w, 5.0);
  EXPECT_NEAR(std::abs(u.mode(0, 0, 3) - Complex(0, 1) * w.mode(0, 0, 3) / 3.0), 0.0, 1e-16);
  EXPECT_EQ(u.mode(1, 0, 3), Complex{});
}

TEST(BiotSavart, CurlAndDivergenceIdentities) {
  const auto g = GridSpec::make2d(16, 64);
  const auto w = oracle::random_band(g, 5, 20, 17);
  for (double t : {0.0, 3.3, 40.0}) {
    const auto u = biot_savart(w, t);
    double curl_err = 0, div_err = 0;
    spectral::for_each_mode(g, [&](int ix, int iy, int) {
      const double k = g.kx(ix), e = g.eta(iy) - k * t;
      if (k == 0 && g.jy(iy) == 0) return;
      const Complex i(0, 1);
      curl_err = std::max(curl_err, std::abs(i * k * u.at(1, ix, iy) - i * e * u.at(0, ix, iy) - w.at(0, ix, iy)));
      div_err = std::max(div_err, std::abs(k * u.at(0, ix, iy) + e * u.at(1, ix, iy)));
    });
    EXPECT_LT(curl_err, 1e-13);
    EXPECT_LT(div_err, 1e-13);
  }
}

TEST(BiotSavart, ZeroVorticityZeroVelocity) {
  SpectralField w(GridSpec::make2d(8, 8));
  EXPECT_EQ(spectral::l2_norm(biot_savart(w, 1.0)), 0.0);
}

TEST(Orr, AmplificationValues) {
  EXPECT_DOUBLE_EQ(orr_amplification(1, 0.0), 1.0);
  EXPECT_NEAR(orr_amplification(1, 10.0), std::sqrt(101.0), 1e-14);
  EXPECT_NEAR(orr_amplification(1, 10.0), 10.0499, 1e-4);
  EXPECT_NEAR(orr_amplification(2, 10.0), std::sqrt(104.0) / 2, 1e-14);
  EXPECT_NEAR(orr_amplification(2, 10.0), 5.0990, 1e-4);
  EXPECT_THROW(orr_amplification(0, 1.0), ArgumentError);
}

TEST(Orr, MeasuredVelocityRatioAtCriticalTime) {
  for (auto [k, j] : {std::pair{1, 10}, {2, 10}, {1, 50}}) {
    const auto s = single_mode(k, j);
    const double eta = s.omega.grid().eta_step() * j;
    const double r = spectral::l2_norm(biot_savart(s.omega, critical_time(k, eta))) /
                     spectral::l2_norm(biot_savart(s.omega, 0.0));
    EXPECT_NEAR(r, std::sqrt(k * k + eta * eta) / std::abs(k), 1e-10);
  }
}

TEST(Orr, CriticalTime) {
  EXPECT_EQ(critical_time(1, 10), 10.0);
  EXPECT_EQ(critical_time(2, 10), 5.0);
  EXPECT_EQ(critical_time(1, -3), -3.0);
  EXPECT_THROW(critical_time(0, 2), ArgumentError);
}

TEST(DampingFit, SingleModeRates) {
  // (1, 0): u2 = 1/(1+t^2), u1 = t/(1+t^2)
  const auto s = single_mode(1, 0);
  const auto times = [] {
    std::vector<double> t;
    for (int i = 0; i <= 90; ++i) t.push_back(10.0 + i);
    return t;
  }();
  const auto tr = trajectory(s, times);
  for (const auto& d : tr) {
    EXPECT_NEAR(d.norm_u2, std::sqrt(2.0) / (1 + d.t * d.t), 1e-15);
    EXPECT_NEAR(d.norm_u1_neq, std::sqrt(2.0) * d.t / (1 + d.t * d.t), 1e-15);
  }
  const auto fit = damping_rate_fit(tr, {10, 100});
  EXPECT_NEAR(fit.u2.exponent, -2.0, 0.01);
  EXPECT_NEAR(fit.u1.exponent, -1.0, 0.01);
}

TEST(DampingFit, ShearOnlyDataRejected) {
  const auto s = single_mode(0, 2);
  std::vector<double> times;
  for (int i = 1; i <= 10; ++i) times.push_back(10.0 * i);
  EXPECT_THROW(damping_rate_fit(trajectory(s, times)), FitError);
}

TEST(DampingFit, TooFewSamples) {
  const auto s = single_mode(1, 1);
  const std::vector<double> times = {1, 2, 3, 4};
  EXPECT_THROW(damping_rate_fit(trajectory(s, times)), FitError);
}

TEST(Linear2D, EnhancedDissipationBound) {
  spectral::RandomFieldSpec rs;
  rs.seed = 8;
  const auto g = GridSpec::make2d(16, 64);
  const auto w = spectral::random_field(g, rs);
  for (double nu : {1e-2, 1e-3}) {
    for (double t : {1.0, 10.0, 50.0}) {
      const auto out = evolve_linear2d({0.0, w, nu}, t);
      spectral::for_each_mode(g, [&](int ix, int iy, int) {
        const int k = g.kx(ix);
        if (k == 0) return;
        EXPECT_LE(std::abs(out.omega.at(0, ix, iy)),
                  std::exp(-nu * k * k * t * t * t / 12.0) * std::abs(w.at(0, ix, iy)) * (1 + 1e-12));
      });
    }
  }
}

TEST(Linear2D, DiagnosticsEnstrophy) {
  const auto s = single_mode(1, 3);
  const auto d = diagnostics(s);
  EXPECT_NEAR(d.enstrophy, 0.5 * 2.0, 1e-15);
  EXPECT_NEAR(d.norm_omega_neq, std::sqrt(2.0), 1e-15);
}
