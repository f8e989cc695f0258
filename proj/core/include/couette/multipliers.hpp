#pragma once

#include <string>
#include <utility>
#include <vector>

#include "couette/field.hpp"
#include "couette/toy_models.hpp"

namespace couette::multipliers {

using spectral::SpectralField;

struct GhostValue {
  double m = 1.0;
  double mdot = 0.0;
};

/// M = exp(-[atan(nu^{1/3}(t - eta/k)) + atan(nu^{1/3} eta/k)]),
/// Mdot = -M nu^{1/3} / (1 + nu^{2/3} (t - eta/k)^2). Throws ArgumentError for k = 0 or nu <= 0.
GhostValue ghost_M(double t, int k, double eta, double nu);

class GhostMultiplier {
 public:
  explicit GhostMultiplier(double nu);
  double nu() const noexcept { return nu_; }
  GhostValue operator()(double t, int k, double eta) const { return ghost_M(t, k, eta, nu_); }
  /// Applies M(t) to every k != 0 coefficient; k = 0 coefficients are untouched.
  SpectralField apply(const SpectralField& f, double t) const;

 private:
  double nu_;
};

struct MpropPoint {
  double t;
  int k;
  double eta;
};

/// Points in the critical-layer variables eta = k nu^{-1/3} y, t = eta/k + x nu^{-1/3}, kept when t >= 0.
std::vector<MpropPoint> mprop_grid(double nu, const std::vector<int>& ks, const std::vector<double>& ys,
                                   const std::vector<double>& xs);

/// max over the points of [nu^{-1/6} (sqrt(-Mdot M) + nu^{1/2} |k, eta - k t|)]^{-1}.
double mprop_constant(const std::vector<MpropPoint>& points, double nu);

struct EnergyAudit {
  double initial = 0.0;      // ||Q(0)||^2 / 2
  double terminal = 0.0;     // ||M Q(T)||^2 / 2
  double ghost = 0.0;        // int ||sqrt(-Mdot M) Q||^2
  double dissipation = 0.0;  // nu int ||grad_L M Q||^2
  double residual = 0.0;     // |terminal + ghost + dissipation - initial| / initial
  double c_nu = 0.0;         // nu^{1/3} int ||M Q_neq||^2 / ||Q(0)||^2
  double t_final = 0.0;
};

/// Energy identity for d_t Q = nu Delta_L Q from q0 at t = 0 to t_final (default: long enough that
/// every k != 0 mode has decayed by e^{-50}). Time integrals use adaptive Gauss-Kronrod per mode.
EnergyAudit ed_energy_audit(const SpectralField& q0, double nu, double t_final = -1.0);
/// Same, after checking every sample against the exact propagator (ContractViolation otherwise).
EnergyAudit ed_energy_audit(const std::vector<std::pair<double, SpectralField>>& trajectory, double nu,
                            double t_final = -1.0);

struct CascadeNorm {
  double lambda0 = 1.0;       // lambda(0)
  double lambda_prime = 0.5;  // lambda(infinity)
  double s = 0.5;
  toy_models::SupersolutionWeights weights{};
  bool use_weights = true;

  /// lambda' + (lambda0 - lambda') / (1 + t): nonincreasing when lambda0 >= lambda'.
  double lambda(double t) const { return lambda_prime + (lambda0 - lambda_prime) / (1.0 + t); }
  /// e^{lambda(t) |xi|^s} / w(t, k, eta). Throws RangeError on overflow.
  double symbol(double t, int k, double eta, int l = 0) const;
};

/// ||A f||_{L2} over all components.
double cascade_norm_eval(const SpectralField& f, const CascadeNorm& cn, double t);

struct TaxonomyEntry {
  std::string name;
  std::string representative;
  bool implemented = true;
  bool bounded_above_below = false;
  std::string note;
};

std::vector<TaxonomyEntry> multiplier_taxonomy();

}  // namespace couette::multipliers
