#pragma once

#include <complex>
#include <vector>

#include "couette/ode.hpp"

namespace couette::toy_models {

using Complex = std::complex<double>;

/// x1' = -nu x1 + coupling x2, x2' = -nu x2. coupling = 1 is the canonical transient-growth pair;
/// coupling = -1 is the lift-up pair (U1_0, U2_0) for a single y-mode with nu replaced by nu eta^2.
struct NonNormalState {
  double x1 = 0.0;
  double x2 = 0.0;
  double nu = 0.0;
  double coupling = 1.0;
};

NonNormalState nonnormal_solve(const NonNormalState& state, double t);

/// Omega_L(k - k', 0) for k - k' = +1 and -1.
struct LowSpectrum {
  Complex plus{};
  Complex minus{};
  static LowSpectrum uniform(double kappa) { return {Complex(kappa, 0.0), Complex(kappa, 0.0)}; }
};

struct EchoChainState {
  double eta = 0.0;
  double kappa = 0.0;
  int kmax = 2;
  std::vector<Complex> amps;  // amps[k - 1] = Omega_H(k, eta), k = 1 .. kmax
  double t = 0.0;
};

struct EchoHistory {
  std::vector<double> t;
  std::vector<std::vector<Complex>> amps;
};

enum class ChainVariant {
  signed_chain,
  /// |coefficients| and |data|: a supersolution of the signed chain.
  sign_stripped,
};

/// d_t Omega_H(k) = -sum_{k' = k +- 1} eta (k - k') / (k'^2 + (eta - k' t)^2) Omega_H(k') Omega_L(k - k')
/// on k = 1 .. kmax, sampled at n_samples equispaced times in [state.t, t_max].
EchoHistory echo_chain_integrate(const EchoChainState& state, const LowSpectrum& low, double t_max,
                                 int n_samples = 201, ChainVariant variant = ChainVariant::signed_chain,
                                 const ode::AdaptiveOptions& opt = {});

struct ToyGrowth {
  double g_c = 1.0;   // |Omega_H(k)| end / start
  double g_nc = 1.0;  // |Omega_H(k - 1)| end / start
  /// log G / log(eta / k^2) for the larger factor; NaN when eta = k^2.
  double exponent = 0.0;
};

/// Two-mode model across [eta/k - eta/k^2, eta/k + eta/k^2] from (1, 1):
///   a' = kappa (k^2 / eta) b,  b' = kappa eta / (k^2 + (eta - k t)^2) a.
/// Throws ArgumentError if eta < k^2 or k < 1.
ToyGrowth toy2d_two_mode(int k, double eta, double kappa);

struct ToyHistory {
  std::vector<double> t;
  std::vector<double> a;  // |Omega_H(k)|
  std::vector<double> b;  // |Omega_H(k - 1)|
};

/// The toy2d system sampled at n equispaced times across its window.
ToyHistory toy2d_history(int k, double eta, double kappa, int n = 201);

struct GrowthPrediction {
  double product = 1.0;     // prod_{k <= sqrt(eta)} (eta / k^2)^c
  double asymptotic = 1.0;  // eta^{-c/2} e^{2 c sqrt(eta)}
  double log_product = 0.0;
  double log_asymptotic = 0.0;
  double ratio = 1.0;  // product / asymptotic, evaluated in logs
};

GrowthPrediction total_growth_prediction(double eta, double c);

/// eta / (k^2 (1 + |t - eta/k|)). Throws ArgumentError for k = 0.
double supersolution_ratio(double t, int k, double eta);

/// Piecewise weights for the cascade norm. For j = 1 .. floor(sqrt|eta|) the window around
/// t_j = |eta|/j has half width tau_j = |eta|/j^2 - 1. Inside a window, d ln w_NC / dt is
/// 1/(1+|t - t_j|) before t_j and (c-1)/(1+|t - t_j|) after, so each window multiplies w_NC by
/// (|eta|/j^2)^c. The critical weight is w_C = w_NC min(1, k^2 (1 + |t - eta/k|) / eta).
struct SupersolutionWeights {
  double c = 1.0;  // >= 1 keeps the weights nondecreasing

  double w_nc(double t, double eta) const;
  double w_c(double t, int k, double eta) const;
  /// w_C for the critical pairing (k eta > 0, k^2 <= |eta|), w_NC otherwise.
  double w(double t, int k, double eta) const;
};

}  // namespace couette::toy_models
