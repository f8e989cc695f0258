#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "couette/errors.hpp"
#include "couette/fit.hpp"
#include "couette/initial_data.hpp"
#include "couette/linear2d.hpp"
#include "couette/linear3d.hpp"
#include "couette/norms.hpp"
#include "oracles.hpp"

using namespace couette;
using namespace couette::linear3d;
using spectral::Complex;
using spectral::GridSpec;
constexpr double kPi = std::numbers::pi;

namespace {

using Vec3 = std::array<Complex, 3>;

// Single Fourier mode of the linearized system in the moving frame, integrated with RK4:
//   dU/dt = -nu |xi_L|^2 U - (U2, 0, 0) - i xi_L P,  P = 2 i k U2 / |xi_L|^2.
Vec3 mode_ode(double k, double eta, double l, double nu, Vec3 u, double t1, int steps) {
  auto rhs = [&](double t, const Vec3& v) {
    const double e = eta - k * t, m = k * k + e * e + l * l;
    const Complex p = Complex(0, 2.0 * k) * v[1] / m;
    const Complex i(0, 1);
    return Vec3{-nu * m * v[0] - v[1] - i * k * p, -nu * m * v[1] - i * e * p, -nu * m * v[2] - i * l * p};
  };
  const double h = t1 / steps;
  double t = 0;
  for (int n = 0; n < steps; ++n) {
    const auto k1 = rhs(t, u);
    Vec3 tmp;
    for (int c = 0; c < 3; ++c) tmp[c] = u[c] + 0.5 * h * k1[c];
    const auto k2 = rhs(t + 0.5 * h, tmp);
    for (int c = 0; c < 3; ++c) tmp[c] = u[c] + 0.5 * h * k2[c];
    const auto k3 = rhs(t + 0.5 * h, tmp);
    for (int c = 0; c < 3; ++c) tmp[c] = u[c] + h * k3[c];
    const auto k4 = rhs(t + h, tmp);
    for (int c = 0; c < 3; ++c) u[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    t += h;
  }
  return u;
}

GridSpec grid3() { return GridSpec::make3d(8, 32, 8, 2 * kPi); }

SpectralField solenoidal(unsigned seed, bool u2_zero = false) {
  spectral::RandomFieldSpec rs;
  rs.seed = seed;
  return spectral::random_solenoidal(grid3(), rs, u2_zero);
}

}  // namespace

TEST(Linear3D, Q2FactorClosedFormAndQuadrature) {
  SpectralField q(grid3());
  q.mode(0, 1, 2, 1) = 1.0;
  const auto out = evolve_Q2(q, 0.01, 2.0);
  const double expected = std::exp(-0.01 * (14.0 / 3.0 + 2.0));
  EXPECT_NEAR(out.mode(0, 1, 2, 1).real(), expected, 1e-15);
  EXPECT_NEAR(expected, 0.935507, 1e-6);
  const double quad = std::exp(-0.01 * oracle::integrate([](double s) { return 1 + (2 - s) * (2 - s) + 1; }, 0, 2));
  EXPECT_NEAR(out.mode(0, 1, 2, 1).real(), quad, 1e-12);
}

TEST(Linear3D, Q2InviscidIdentityAndZeroModeHeat) {
  SpectralField q(grid3());
  q.mode(0, 0, 3, 2) = Complex(0.5, 0.5);
  q.mode(0, 2, 1, 1) = Complex(1.0, 0.0);
  EXPECT_EQ(evolve_Q2(q, 0.0, 9.0).mode(0, 2, 1, 1), Complex(1.0, 0.0));
  EXPECT_NEAR(std::abs(evolve_Q2(q, 0.1, 2.0).mode(0, 0, 3, 2) - std::exp(-0.1 * 13 * 2.0) * Complex(0.5, 0.5)), 0.0,
              1e-16);
}

TEST(Linear3D, RecoverU2AndPressureSingleModes) {
  SpectralField q(grid3());
  q.mode(0, 1, 0, 0) = Complex(0.7, -0.2);
  EXPECT_EQ(recover_U2(q, 0.0).mode(0, 1, 0, 0), -Complex(0.7, -0.2));
  SpectralField u2(grid3());
  u2.mode(0, 1, 0, 0) = Complex(0.3, 0.1);
  EXPECT_NEAR(std::abs(pressure_from_U2(u2, 0.0).mode(0, 1, 0, 0) - Complex(0, 2) * Complex(0.3, 0.1)), 0, 1e-16);
  EXPECT_EQ(spectral::l2_norm(pressure_from_U2(SpectralField(grid3()), 3.0)), 0.0);
}

TEST(Linear3D, U2RatioSymmetricAboutCriticalTime) {
  SpectralField q(grid3());
  const int j = 5;
  q.mode(0, 1, j, 0) = 1.0;
  const double eta = j;
  for (double t : {1.0, 5.0, 10.0}) {
    const double r = spectral::l2_norm(recover_U2(q, t)) / spectral::l2_norm(recover_U2(q, 0.0));
    EXPECT_NEAR(r, (1 + eta * eta) / (1 + (eta - t) * (eta - t)), 1e-13);
  }
}

TEST(Linear3D, ClosedFormMatchesModeOde) {
  for (auto [k, j, l] : {std::array{1, 3, 1}, {2, -4, 0}, {1, 0, 2}, {0, 2, 1}}) {
    SpectralField u(grid3(), 3);
    const double eta = j;
    // divergence-free datum at t = 0
    Vec3 v{Complex(0.3, 0.2), Complex(-0.1, 0.4), Complex(0, 0)};
    if (l != 0) v[2] = -(double(k) * v[0] + eta * v[1]) / double(l);
    else v[0] = -eta * v[1] / double(k);
    for (int c = 0; c < 3; ++c) u.set_real_mode(c, k, j, l, v[c]);
    const double nu = 1e-3, t = 7.5;
    const auto out = evolve_linear3d({0.0, u, nu}, t);
    const auto ref = mode_ode(k, eta, l, nu, v, t, 20000);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(out.u.mode(c, k, j, l) - ref[c]), 0.0, 1e-10) << k << j << l;
  }
}

TEST(Linear3D, ResolventIntegralsMatchQuadrature) {
  for (auto [k, eta, l] : {std::array{1.0, 3.0, 1.0}, {2.0, -5.0, 0.0}, {0.0, 2.0, 1.0}, {3.0, 30.0, 2.0}}) {
    const double t = 20.0;
    double i1, i2;
    resolvent_integrals(k, eta, l, t, i1, i2);
    auto m = [&](double s) { return k * k + (eta - k * s) * (eta - k * s) + l * l; };
    EXPECT_NEAR(i1, oracle::integrate([&](double s) { return 1 / m(s); }, 0, t), 1e-12);
    EXPECT_NEAR(i2, oracle::integrate([&](double s) { return 1 / (m(s) * m(s)); }, 0, t), 1e-12);
  }
}

TEST(Linear3D, Q2RoutesCommute) {
  const auto u = solenoidal(3);
  const double nu = 1e-3;
  for (double t : {0.5, 4.0, 30.0}) {
    const auto full = evolve_linear3d({0.0, u, nu}, t);
    const auto q_direct = evolve_Q2(q2_from_U2(u.extract(1), 0.0), nu, t);
    const auto q_full = q2_from_U2(full.u.extract(1), t);
    EXPECT_LT(spectral::l2_norm(q_full - q_direct), 1e-10 * spectral::l2_norm(q_direct));
  }
}

TEST(Linear3D, DivergencePreserved) {
  const auto u = solenoidal(4);
  for (double t : {0.0, 1.0, 25.0, 100.0}) EXPECT_LT(divergence_defect(evolve_linear3d({0.0, u, 1e-4}, t).u, t), 1e-12);
}

TEST(Linear3D, U13InviscidConstantAndContracts) {
  const auto u = solenoidal(5, true);
  const auto out = evolve_U13({0.0, u, 0.0}, 12.0);
  for (std::size_t i = 0; i < u.data().size(); ++i) ASSERT_EQ(out.u.data()[i], u.data()[i]);
  EXPECT_LT(divergence_defect(out.u, 12.0), 1e-12);
  auto bad = u;
  bad.mode(1, 1, 1, 1) = 1e-3;
  EXPECT_THROW(evolve_U13({0.0, bad, 0.0}, 1.0), ContractViolation);
  auto nondiv = u;
  nondiv.mode(0, 1, 1, 1) += 0.5;
  EXPECT_THROW(evolve_U13({0.0, nondiv, 0.0}, 1.0), ContractViolation);
}

TEST(Linear3D, U13MatchesFullEvolution) {
  const auto u = solenoidal(6, true);
  const auto a = evolve_U13({0.0, u, 1e-3}, 6.0).u, b = evolve_linear3d({0.0, u, 1e-3}, 6.0).u;
  EXPECT_LT(spectral::l2_norm(a - b), 1e-13 * spectral::l2_norm(b));
}

TEST(Linear3D, VorticityGrowsLinearly) {
  SpectralField u(grid3(), 3);
  // U2 = 0, k U1 + l U3 = 0 with k = l = 1
  u.set_real_mode(0, 1, 2, 1, Complex(0.5, 0));
  u.set_real_mode(2, 1, 2, 1, Complex(-0.5, 0));
  std::vector<double> t, c;
  for (int i = 0; i <= 45; ++i) {
    t.push_back(10.0 + 2 * i);
    c.push_back(spectral::l2_norm(curl(evolve_U13({0.0, u, 0.0}, t.back()).u, t.back())));
  }
  EXPECT_NEAR(fit_power_law(t, c).exponent, 1.0, 0.1);
}

TEST(LiftUp, ExplicitSolution) {
  const auto g = grid3();
  SpectralField u0(g, 3);
  u0.set_real_mode(1, 0, 2, 1, Complex(0.25, 0.1));
  const double w = spectral::l2_norm(u0.extract(1));
  EXPECT_EQ(spectral::l2_norm(liftup_zero_modes(u0, 0.3, 0.0) - u0), 0.0);
  EXPECT_NEAR(spectral::l2_norm(liftup_zero_modes(u0, 0.0, 10.0).extract(0)), 10.0 * w, 1e-14);
  auto bad = u0;
  bad.mode(0, 1, 0, 0) = 1.0;
  EXPECT_THROW(liftup_zero_modes(bad, 0.0, 1.0), ContractViolation);
}

TEST(LiftUp, MaximumNearInverseDiffusionRate) {
  const auto g = grid3();
  SpectralField u0(g, 3);
  u0.set_real_mode(1, 0, 2, 0, Complex(0.5, 0.0));  // eta0 = 2, l = 0
  const double nu = 1e-3, rate = nu * 4.0;
  double best = 0, arg = 0;
  for (double t = 0; t <= 3.0 / rate; t += 0.5) {
    const double v = spectral::l2_norm(liftup_zero_modes(u0, nu, t).extract(0));
    if (v > best) best = v, arg = t;
  }
  EXPECT_NEAR(arg, 1.0 / rate, 0.5);
  EXPECT_NEAR(best, std::exp(-1.0) / rate * spectral::l2_norm(u0.extract(1)), 1e-6 * best);
}

TEST(LiftUp, PdeResidual) {
  // d_t U1 = nu Delta U1 - U2 with spectral Delta and a 4th-order central difference in t.
  const auto g = grid3();
  SpectralField u0(g, 3);
  u0.set_real_mode(0, 0, 1, 2, Complex(0.2, 0.3));
  u0.set_real_mode(1, 0, 1, 2, Complex(0.4, -0.1));
  u0.set_real_mode(1, 0, 3, 0, Complex(0.1, 0.0));
  const double nu = 0.01, t = 3.0, h = 1e-3;
  auto at = [&](double s) { return liftup_zero_modes(u0, nu, s); };
  const auto d = (1.0 / (12.0 * h)) * (8.0 * (at(t + h) - at(t - h)) - (at(t + 2 * h) - at(t - 2 * h)));
  auto lap = at(t);
  lap.apply_symbol([](int k, double eta, int l) { return Complex(-(k * k + eta * eta + l * l), 0); });
  const auto now = at(t);
  double res = 0;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int iz = 0; iz < g.nz; ++iz)
      res = std::max(res, std::abs(d.at(0, 0, iy, iz) - nu * lap.at(0, 0, iy, iz) + now.at(1, 0, iy, iz)));
  EXPECT_LT(res, 1e-10);
}

TEST(Linear3D, EnhancedDissipationBoundOnQ2) {
  const auto u = solenoidal(9);
  const auto q = q2_from_U2(u.extract(1), 0.0);
  const auto g = grid3();
  for (double nu : {1e-2, 1e-3}) {
    const double t = 20.0;
    const auto out = evolve_Q2(q, nu, t);
    spectral::for_each_mode(g, [&](int ix, int iy, int iz) {
      const int k = g.kx(ix);
      if (k == 0) return;
      EXPECT_LE(std::abs(out.at(0, ix, iy, iz)), std::exp(-nu * k * k * t * t * t / 12) * std::abs(q.at(0, ix, iy, iz)) * (1 + 1e-12));
    });
  }
}

TEST(Linear3D, RequiresInitialTimeZero) {
  LinearState3D s{1.0, solenoidal(2), 0.0};
  EXPECT_THROW(evolve_linear3d(s, 2.0), ArgumentError);
}
