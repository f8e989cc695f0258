#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "couette/field.hpp"
#include "couette/norms.hpp"

namespace couette::nonlinear2d {

using spectral::Complex;
using spectral::GridSpec;
using spectral::NormSpec;
using spectral::SpectralField;

struct SolverConfig2D {
  GridSpec grid = GridSpec::make2d(16, 256, 2.0 * 3.141592653589793);
  double nu = 0.0;
  double dt = 0.02;
  double t_max = 10.0;
  /// Diagnostics are recorded at these times (t = 0 is always recorded). Empty: every sample_dt.
  std::vector<double> sample_times;
  double sample_dt = 0.1;
  std::vector<double> snapshot_times;
  bool dealias = true;
  /// Scale applied to the initial data by solve().
  double epsilon = 1.0;
  /// Extra norms of Omega_neq recorded per sample.
  std::vector<NormSpec> monitor_norms;
  /// Integer modes (k, j), with their conjugates, left out of Sample::norm_u2_signal.
  std::vector<std::pair<int, int>> signal_exclude;
  /// Norm of the velocity U recorded as Sample::norm_u_y (the monitored Y norm of a scan).
  NormSpec velocity_norm = NormSpec::l2();
  /// Off only for convergence studies of the scheme itself.
  bool check_cfl = true;
};

/// Largest time at which every retained (k, eta) keeps eta - k t inside the retained band:
/// T_res = (eta_max / 2) / k_max.
double resolution_horizon(const GridSpec& g);

/// Nonlinear term -(Phi_X Omega_Y - Phi_Y Omega_X) with Phi = Delta_L^{-1} Omega at time t.
/// When max_speed is given it receives max |(-Phi_Y, Phi_X)| over the physical grid.
SpectralField nonlinear_term(const SpectralField& omega, double t, bool dealias = true, double* max_speed = nullptr);

/// CFL bound 0.5 min(dx, dy) / max |U| for the given velocity magnitude.
double cfl_limit(const GridSpec& g, double max_speed);

/// One integrating-factor RK4 step of size h from t. Throws StepSizeError / DivergenceError.
SpectralField step(const SpectralField& omega, double t, double h, const SolverConfig2D& cfg);
SpectralField step(const SpectralField& omega, double t, const SolverConfig2D& cfg);

struct Sample {
  double t = 0.0;
  double norm_u1_neq = 0.0;
  double norm_u2 = 0.0;
  double norm_u_neq = 0.0;
  double norm_omega_neq = 0.0;
  std::vector<double> monitor;  // per cfg.monitor_norms, evaluated on Omega_neq
  double norm_u_y = 0.0;        // ||U|| in cfg.velocity_norm
  double norm_u0 = 0.0;         // ||U^1_0||, the x-averaged shear
  double energy = 0.0;          // ||U||^2 / 2
  double enstrophy = 0.0;       // ||Omega||^2 / 2
  double production = 0.0;      // int_0^t <U^1, U^2>
  double dissipation = 0.0;     // nu int_0^t ||Omega||^2
  double enstrophy_dissipation = 0.0;  // nu int_0^t ||grad_L Omega||^2
  std::vector<double> u2_by_k;  // ||U^2|| restricted to |k| = 0 .. kmax
  double norm_u2_signal = 0.0;  // ||U^2|| without cfg.signal_exclude
  std::vector<Complex> u0_profile;  // hat U^1(0, eta) in storage order along y
};

struct Trajectory {
  GridSpec grid;
  double nu = 0.0;
  double epsilon = 0.0;
  double norm_initial = 0.0;  // ||Omega_in||_{L2} after scaling
  std::vector<Sample> samples;
  std::vector<std::pair<double, SpectralField>> snapshots;
  SpectralField final_omega;
  double final_time = 0.0;

  /// E + P: constant at nu = 0, nonincreasing at nu > 0.
  double energy_budget(std::size_t i) const { return samples[i].energy + samples[i].production; }
};

/// Integrates epsilon * omega_in from t = 0 to cfg.t_max. Throws ResolutionError if t_max > T_res.
Trajectory solve(const SpectralField& omega_in, const SolverConfig2D& cfg);

struct PsiSample {
  double t = 0.0;
  std::vector<Complex> h;    // t psi
  std::vector<Complex> psi;
  std::vector<Complex> g;
};

/// d_t (t psi) = u_0^1 + nu d_yy (t psi), tpsi(0) = 0, per eta with the exact integrating factor and
/// cubic interpolation of u_0^1 between samples. Requires the first sample at t = 0 and >= 4 samples.
std::vector<PsiSample> psi_solve(const Trajectory& traj);
/// max over interior samples of |d_t h - u_0^1 + nu eta^2 h| / max |u_0^1| with a 4th-order
/// central difference in t; needs uniformly spaced samples.
double psi_residual(const Trajectory& traj, std::span<const PsiSample> psi);

struct MetastabilityReport {
  std::vector<double> t;
  std::vector<double> distance;  // ||u(t) - u_MS|| = ||u_neq(t)||
  double epsilon = 0.0;          // ||Omega_in||
  double envelope_constant = 0.0;  // max distance <t> / epsilon on the window
};

MetastabilityReport metastability_report(const Trajectory& traj, double t_lo = 0.0,
                                         double t_hi = std::numeric_limits<double>::infinity());

struct EchoConfig {
  GridSpec grid = GridSpec::make2d(16, 768, 2.0 * 3.141592653589793);
  int k_low = 1, j_low = 0;
  int k_high = 2, j_high = 20;
  double kappa = 0.05;      // low-mode amplitude: Omega = kappa cos(k_L X + eta_L Y) + ...
  double high_amp = 1e-3;   // high-mode amplitude
  double nu = 1e-6;
  double dt = 0.02;
  double sample_dt = 0.05;
  double t_max = 25.0;
};

struct Peak {
  double t = 0.0;
  double value = 0.0;
};

struct EchoRecord {
  std::vector<double> t;
  std::vector<double> u2_total;
  std::vector<double> u2_signal;             // u2_total without the low carrier mode
  std::vector<std::vector<double>> u2_by_k;  // [sample][|k|]
  std::vector<Peak> peaks;                   // local maxima of u2_signal
  std::vector<double> predicted_times;       // eta_H / k for k = k_H, k_H - 1, ..., 1
  double measured_echo_amp = 0.0;            // |hat Omega(k_H - k_L, eta_H)| at t_max
  double chain_echo_amp = 0.0;               // same amplitude from the echo-chain model
};

/// Local maxima of v (strictly above both neighbours) at least `prominence` relative above the
/// smaller of the adjacent minima.
std::vector<Peak> find_peaks(std::span<const double> t, std::span<const double> v, double prominence = 1e-3);

EchoRecord echo_experiment(const EchoConfig& cfg);
/// First peak after t_after, if any (t = -1 if none).
Peak secondary_peak(const EchoRecord& rec, double t_after);

}  // namespace couette::nonlinear2d
