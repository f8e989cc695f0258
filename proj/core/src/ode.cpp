#include "couette/ode.hpp"

#include <boost/numeric/odeint.hpp>

#include "couette/errors.hpp"

namespace couette::ode {

namespace odeint = boost::numeric::odeint;

std::vector<State> integrate_dopri5(const Rhs& f, State y0, std::span<const double> times,
                                    const AdaptiveOptions& opt) {
  std::vector<State> out;
  if (times.empty()) return out;
  out.reserve(times.size());
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) throw ArgumentError("integrate_dopri5: sample times must be nondecreasing");
  }
  auto stepper = odeint::make_controlled(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
  double reached = times.front();
  auto sys = [&f](const State& y, State& dy, double t) { f(y, dy, t); };
  auto obs = [&](const State& y, double t) {
    out.push_back(y);
    reached = t;
  };
  try {
    odeint::integrate_times(stepper, sys, y0, times.begin(), times.end(), opt.h0, obs,
                            odeint::max_step_checker(opt.max_steps));
  } catch (const std::exception& e) {
    throw ToleranceError(std::string("adaptive integrator failed: ") + e.what(), reached);
  }
  for (const auto& y : out) {
    for (const auto& v : y) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ToleranceError("adaptive integrator produced non-finite values", reached);
      }
    }
  }
  return out;
}

State integrate_rk4(const Rhs& f, State y0, double t0, double t1, int n) {
  odeint::runge_kutta4<State> stepper;
  const double h = (t1 - t0) / n;
  auto sys = [&f](const State& y, State& dy, double t) { f(y, dy, t); };
  for (int i = 0; i < n; ++i) stepper.do_step(sys, y0, t0 + i * h, h);
  return y0;
}

}  // namespace couette::ode
