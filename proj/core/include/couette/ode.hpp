#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace couette::ode {

using Complex = std::complex<double>;
using State = std::vector<Complex>;
/// dydt = f(y, t)
using Rhs = std::function<void(const State& y, State& dydt, double t)>;

struct AdaptiveOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h0 = 1e-3;
  std::size_t max_steps = 5'000'000;
};

/// Dormand-Prince 5(4) with step control, landing exactly on every requested time.
/// times must be nondecreasing; the first entry is the initial time of y0.
/// Throws ToleranceError carrying the last time reached when the controller stalls.
std::vector<State> integrate_dopri5(const Rhs& f, State y0, std::span<const double> times,
                                    const AdaptiveOptions& opt = {});

/// Classical fixed-step RK4 over [t0, t1] with n steps.
State integrate_rk4(const Rhs& f, State y0, double t0, double t1, int n);

}  // namespace couette::ode
