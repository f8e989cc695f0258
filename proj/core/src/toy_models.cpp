#include "couette/toy_models.hpp"

#include <cmath>
#include <numbers>

#include "couette/errors.hpp"

namespace couette::toy_models {

NonNormalState nonnormal_solve(const NonNormalState& s, double t) {
  NonNormalState out = s;
  const double decay = std::exp(-s.nu * t);
  out.x1 = decay * (s.x1 + s.coupling * t * s.x2);
  out.x2 = decay * s.x2;
  return out;
}

EchoHistory echo_chain_integrate(const EchoChainState& state, const LowSpectrum& low, double t_max, int n_samples,
                                 ChainVariant variant, const ode::AdaptiveOptions& opt) {
  if (state.kmax < 2) throw ArgumentError("echo_chain_integrate: kmax must be >= 2");
  if (state.kappa < 0.0) throw ArgumentError("echo_chain_integrate: kappa must be >= 0");
  if (static_cast<int>(state.amps.size()) != state.kmax) throw ArgumentError("echo_chain_integrate: amps must have kmax entries");
  if (t_max < state.t) throw ArgumentError("echo_chain_integrate: t_max precedes the state time");
  if (n_samples < 2) n_samples = 2;
  const int n = state.kmax;
  const double eta = state.eta;
  const bool strip = variant == ChainVariant::sign_stripped;
  const Complex lp = strip ? Complex(std::abs(low.plus)) : low.plus;
  const Complex lm = strip ? Complex(std::abs(low.minus)) : low.minus;
  auto rhs = [&](const ode::State& y, ode::State& dy, double t) {
    for (int i = 0; i < n; ++i) {
      const int k = i + 1;
      Complex acc{};
      for (int kp : {k - 1, k + 1}) {
        if (kp < 1 || kp > n) continue;
        const double e = eta - kp * t;
        double coef = -eta * (k - kp) / (double(kp) * kp + e * e);
        if (strip) coef = std::abs(coef);
        acc += coef * y[kp - 1] * (k - kp == 1 ? lp : lm);
      }
      dy[i] = acc;
    }
  };
  ode::State y0 = state.amps;
  if (strip)
    for (auto& v : y0) v = std::abs(v);
  std::vector<double> times(n_samples);
  for (int i = 0; i < n_samples; ++i) times[i] = state.t + (t_max - state.t) * i / (n_samples - 1);
  ode::AdaptiveOptions o = opt;
  // steps must resolve the width ~1/k' of each critical layer
  o.h0 = std::min(o.h0, 0.01);
  EchoHistory hist;
  hist.t = times;
  hist.amps = ode::integrate_dopri5(rhs, y0, times, o);
  return hist;
}

ToyGrowth toy2d_two_mode(int k, double eta, double kappa) {
  if (k < 1) throw ArgumentError("toy2d_two_mode: k must be >= 1");
  if (eta < double(k) * k) throw ArgumentError("toy2d_two_mode: window requires eta >= k^2");
  const double r = eta / (double(k) * k);
  ToyGrowth out;
  if (kappa == 0.0) {
    out.exponent = 0.0;
    return out;
  }
  // Rescaled time tau in [-1, 1], t = eta/k + r tau:  a' = kappa b,  b' = kappa r^2 / (1 + r^2 tau^2) a.
  auto rhs = [&](const ode::State& y, ode::State& dy, double tau) {
    dy[0] = kappa * y[1];
    dy[1] = kappa * r * r / (1.0 + r * r * tau * tau) * y[0];
  };
  const double times[2] = {-1.0, 1.0};
  ode::AdaptiveOptions o;
  o.rtol = 1e-10;
  o.h0 = 1e-3 / r;
  const auto ys = ode::integrate_dopri5(rhs, ode::State{1.0, 1.0}, times, o);
  out.g_c = std::abs(ys.back()[0]);
  out.g_nc = std::abs(ys.back()[1]);
  out.exponent = r > 1.0 ? std::log(std::max(out.g_c, out.g_nc)) / std::log(r) : std::nan("");
  return out;
}

ToyHistory toy2d_history(int k, double eta, double kappa, int n) {
  if (k < 1) throw ArgumentError("toy2d_history: k must be >= 1");
  if (eta < double(k) * k) throw ArgumentError("toy2d_history: window requires eta >= k^2");
  if (n < 2) n = 2;
  const double r = eta / (double(k) * k);
  auto rhs = [&](const ode::State& y, ode::State& dy, double tau) {
    dy[0] = kappa * y[1];
    dy[1] = kappa * r * r / (1.0 + r * r * tau * tau) * y[0];
  };
  std::vector<double> taus(n);
  for (int i = 0; i < n; ++i) taus[i] = -1.0 + 2.0 * i / (n - 1);
  ode::AdaptiveOptions o;
  o.rtol = 1e-10;
  o.h0 = 1e-3 / r;
  const auto ys = ode::integrate_dopri5(rhs, ode::State{1.0, 1.0}, taus, o);
  ToyHistory h;
  for (int i = 0; i < n; ++i) {
    h.t.push_back(eta / k + r * taus[i]);
    h.a.push_back(std::abs(ys[i][0]));
    h.b.push_back(std::abs(ys[i][1]));
  }
  return h;
}

GrowthPrediction total_growth_prediction(double eta, double c) {
  if (eta < 1.0) throw ArgumentError("total_growth_prediction: eta must be >= 1");
  if (!(c > 0.0)) throw ArgumentError("total_growth_prediction: c must be positive");
  GrowthPrediction g;
  const int n = static_cast<int>(std::floor(std::sqrt(eta) + 1e-12));
  // prod_{k=1}^{n} eta / k^2 = eta^n / (n!)^2
  g.log_product = c * (n * std::log(eta) - 2.0 * std::lgamma(n + 1.0));
  g.log_asymptotic = c * (2.0 * std::sqrt(eta) - 0.5 * std::log(eta));
  g.product = std::exp(g.log_product);
  g.asymptotic = std::exp(g.log_asymptotic);
  g.ratio = std::exp(g.log_product - g.log_asymptotic);
  return g;
}

double supersolution_ratio(double t, int k, double eta) {
  if (k == 0) throw ArgumentError("supersolution_ratio: k must be nonzero");
  return eta / (double(k) * k * (1.0 + std::abs(t - eta / k)));
}

double SupersolutionWeights::w_nc(double t, double eta) const {
  const double a = std::abs(eta);
  const int J = static_cast<int>(std::floor(std::sqrt(a) + 1e-12));
  double lw = 0.0;
  for (int j = 1; j <= J; ++j) {
    const double tj = a / j, tau = a / (double(j) * j) - 1.0;
    if (tau <= 0.0 || t <= tj - tau) continue;
    const double full = std::log1p(tau);
    if (t <= tj) {
      lw += full - std::log1p(tj - t);
    } else if (t <= tj + tau) {
      lw += full + (c - 1.0) * std::log1p(t - tj);
    } else {
      lw += c * full;
    }
  }
  return std::exp(lw);
}

double SupersolutionWeights::w_c(double t, int k, double eta) const {
  if (k == 0) throw ArgumentError("w_c: k must be nonzero");
  const double a = std::abs(eta), kk = std::abs(k);
  const double ratio = kk * kk * (1.0 + std::abs(t - a / kk)) / a;
  return w_nc(t, eta) * std::min(1.0, ratio);
}

double SupersolutionWeights::w(double t, int k, double eta) const {
  if (k != 0 && double(k) * eta > 0.0 && double(k) * k <= std::abs(eta)) return w_c(t, k, eta);
  return w_nc(t, eta);
}

}  // namespace couette::toy_models
