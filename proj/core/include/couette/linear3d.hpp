#pragma once

#include <span>
#include <vector>

#include "couette/field.hpp"

namespace couette::linear3d {

using spectral::SpectralField;

/// Velocity U(t, X, Y, Z) in the sheared frame; three components on a 3D grid.
struct LinearState3D {
  double t = 0.0;
  SpectralField u;
  double nu = 0.0;
};

/// Q2 = Delta_L U2 propagated from 0 to t by the moving-frame heat factor.
SpectralField evolve_Q2(const SpectralField& q2_in, double nu, double t);
/// U2 = Delta_L^{-1} Q2 at time t (zero mode gauged to 0).
SpectralField recover_U2(const SpectralField& q2, double t);
/// Q2 = Delta_L U2 at time t.
SpectralField q2_from_U2(const SpectralField& u2, double t);
/// P = 2 i k U2 / |xi_L|^2 (zero mode gauged to 0).
SpectralField pressure_from_U2(const SpectralField& u2, double t);

/// k U1 + (eta - k t) U2 + l U3, max modulus relative to max |U|.
double divergence_defect(const SpectralField& u, double t);

/// U1, U3 carried by the heat factor when U2 = 0. Throws ContractViolation if U2 != 0 or if
/// k U1 + l U3 = 0 fails.
LinearState3D evolve_U13(const LinearState3D& state, double t);

/// x-independent data (every k != 0 coefficient zero, else ContractViolation):
/// U1 = e^{nu t Delta}(U1_in - t U2_in), U2 = e^{nu t Delta} U2_in, U3 = e^{nu t Delta} U3_in.
SpectralField liftup_zero_modes(const SpectralField& u0_in, double nu, double t);

/// Complete linear evolution from state.t = 0 to t in closed form. With E the heat factor,
///   U2(t) = -E Q_in / |xi_L(t)|^2,
///   U1(t) = E [U1(0) + Q_in (I1 - 2 k^2 I2)],  U3(t) = E [U3(0) - 2 k l Q_in I2],
/// where I_n = int_0^t |xi_L(s)|^{-2n} ds. Requires state.t == 0.
LinearState3D evolve_linear3d(const LinearState3D& initial, double t);

/// int_0^t ds / |xi_L(s)|^2 and int_0^t ds / |xi_L(s)|^4 for (k, eta, l) != 0.
void resolvent_integrals(double k, double eta, double l, double t, double& i1, double& i2);

/// Curl of the lab-frame velocity, i xi_L x U; three components.
SpectralField curl(const SpectralField& u, double t);

struct Diagnostics {
  double t = 0.0;
  double norm_u2_neq = 0.0;
  double norm_p = 0.0;
  double norm_u1_neq = 0.0;
  double norm_u3_neq = 0.0;
  double norm_curl_u = 0.0;
  double norm_u1_zero = 0.0;
};

Diagnostics diagnostics(const LinearState3D& state);
std::vector<Diagnostics> trajectory(const LinearState3D& initial, std::span<const double> times);

}  // namespace couette::linear3d
