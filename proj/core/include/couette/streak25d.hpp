#pragma once

#include <cstdint>
#include <vector>

#include "couette/field.hpp"

namespace couette::streak25d {

using spectral::GridSpec;
using spectral::SpectralField;

/// x-independent flow on the (z, y) torus. The grid's first axis is z (period 2pi), the second is
/// y (period Ly): kx() is the z wavenumber l and eta() the y wavenumber.
/// (u2, u3) = (-d_z phi, d_y phi), Delta phi = omega.
struct StreakState {
  double t = 0.0;
  SpectralField omega;  // vorticity of (u2, u3)
  SpectralField u1;
  double nu = 0.0;
};

/// (u2, u3) recovered from omega; two components.
SpectralField velocity_yz(const SpectralField& omega);
/// Largest stable step 0.5 min(dy, dz) / max |(u2, u3)|.
double cfl_limit(const StreakState& s);

/// One integrating-factor RK4 step of
///   d_t omega + (u2 d_y + u3 d_z) omega = nu Delta omega,
///   d_t u1 + (u2 d_y + u3 d_z) u1 = -u2 + nu Delta u1.
/// Throws StepSizeError above the CFL bound and DivergenceError on non-finite output.
StreakState streak_step(const StreakState& s, double dt);

struct StreakSample {
  double t = 0.0;
  double norm_u1 = 0.0;
  double norm_u2 = 0.0;
  double energy_23 = 0.0;  // ||(u2, u3)||^2 / 2
};

struct StreakRunConfig {
  double nu = 1e-3;
  double t_max = 2e3;
  double dt_max = 20.0;
  double cfl_safety = 0.9;  // fraction of the CFL bound
  /// dt never drops below this; a CFL bound below it is an error.
  double dt_min = 1e-8;
  double sample_dt = 0.0;  // 0: record every step
};

struct StreakRun {
  std::vector<StreakSample> samples;
  double max_u1 = 0.0;
  double argmax_t = 0.0;
  StreakState final_state;
  int steps = 0;
};

/// Adaptive-step integration to t_max. max_u1 is taken over every accepted step.
StreakRun streak_run(const StreakState& initial, const StreakRunConfig& cfg);

/// Default streak datum: phi proportional to cos z plus random modes carrying `noise` of the
/// energy, scaled so ||(u2, u3)||_{L2} = eps; u1 = 0.
StreakState default_streak_data(const GridSpec& g, double eps, double nu, std::uint64_t seed = 7,
                                double noise = 0.05);

struct ScanCell {
  double eps = 0.0;
  double nu = 0.0;
  double max_u1 = 0.0;
  double argmax_t = 0.0;
  bool perturbative = true;  // eps / nu <= 0.5
};

/// max_t ||u1|| on the product grid with T = 2/nu and dt_max = 0.02/nu. Parallel over cells with
/// up to `jobs` threads (0: hardware concurrency).
std::vector<ScanCell> streak_growth_scan(const GridSpec& g, const std::vector<double>& eps_values,
                                         const std::vector<double>& nu_values, int jobs = 0,
                                         std::uint64_t seed = 7);

}  // namespace couette::streak25d
