#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>

#include "couette/errors.hpp"
#include "couette/fit.hpp"
#include "couette/harness.hpp"
#include "couette/parallel.hpp"

namespace couette::harness {

using nlohmann::json;

double monitored_max(const ExperimentConfig& cfg) { return run_experiment(cfg, false).max_monitored; }

namespace {

ScanCellResult evaluate(const ExperimentConfig& base, double eps, double nu, double theta) {
  ExperimentConfig cfg = base;
  cfg.eps = eps;
  cfg.nu = nu;
  const auto t0 = std::chrono::steady_clock::now();
  ScanCellResult c{eps, nu, monitored_max(cfg), false, 0.0};
  c.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.transition = !(c.max_monitored < theta);  // NaN counts as transitional
  return c;
}

}  // namespace

ScanResult threshold_scan(const ExperimentConfig& base, int jobs) {
  const ScanSpec& sp = base.scan;
  std::vector<double> eps = sp.eps_grid, nus = sp.nu_grid;
  if (nus.empty()) nus = base.nu_grid;
  std::sort(eps.begin(), eps.end());
  std::sort(nus.begin(), nus.end());
  if (nus.size() < 4) throw ConfigError("scan: need at least 4 nu values");
  // 1.5 decades with half decades rounded to 3, so {3e-3, 1e-3, 3e-4, 1e-4} qualifies
  if (nus.front() <= 0.0 || nus.back() / nus.front() < 30.0 * (1 - 1e-12)) {
    throw ConfigError("scan: nu values must be positive and span at least 1.5 decades");
  }
  if (eps.size() < 6) throw ConfigError("scan: need at least 6 eps values");
  if (eps.front() <= 0.0) throw ConfigError("scan: eps values must be positive");
  if (!(sp.theta > 0.0)) throw ConfigError("scan: theta must be positive");
  if (!(sp.bracket_ratio > 1.0)) throw ConfigError("scan: bracket_ratio must exceed 1");

  ScanResult res;
  res.solver = solver_name(base.solver);
  res.theta = sp.theta;

  const std::size_t ne = eps.size();
  std::vector<ScanCellResult> grid(ne * nus.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    grid[i] = evaluate(base, eps[i % ne], nus[i / ne], sp.theta);
  });
  res.cells = grid;

  res.thresholds.resize(nus.size());
  std::vector<std::vector<ScanCellResult>> probes(nus.size());
  parallel_for(nus.size(), jobs, [&](std::size_t n) {
    NuThreshold& th = res.thresholds[n];
    th.nu = nus[n];
    std::size_t first = ne;
    for (std::size_t e = 0; e < ne; ++e) {
      if (grid[n * ne + e].transition) {
        first = e;
        break;
      }
    }
    for (std::size_t e = first; e < ne; ++e) th.monotonicity_violations += grid[n * ne + e].transition ? 0 : 1;
    if (first == ne) {
      th.censored = true;
      th.eps_lo = eps.back();
      th.eps_hi = std::numeric_limits<double>::infinity();
      return;
    }
    if (first == 0) {
      th.censored_low = true;
      th.eps_lo = 0.0;
      th.eps_hi = eps.front();
      th.eps_star = eps.front();
      return;
    }
    th.eps_lo = eps[first - 1];
    th.eps_hi = eps[first];
    while (th.eps_hi / th.eps_lo > sp.bracket_ratio) {
      const double mid = std::sqrt(th.eps_lo * th.eps_hi);
      const auto c = evaluate(base, mid, th.nu, sp.theta);
      probes[n].push_back(c);
      (c.transition ? th.eps_hi : th.eps_lo) = mid;
      ++th.bisection_steps;
      th.bracket_ratios.push_back(th.eps_hi / th.eps_lo);
    }
    th.eps_star = std::sqrt(th.eps_lo * th.eps_hi);
  });
  for (auto& p : probes) res.cells.insert(res.cells.end(), p.begin(), p.end());

  std::vector<double> x, y;
  for (const auto& th : res.thresholds) {
    if (th.censored || th.censored_low) continue;
    x.push_back(std::log(th.nu));
    y.push_back(std::log(th.eps_star));
  }
  res.n_fit = static_cast<int>(x.size());
  res.all_censored = std::all_of(res.thresholds.begin(), res.thresholds.end(),
                                 [](const NuThreshold& t) { return t.censored; });
  const double nan = std::numeric_limits<double>::quiet_NaN();
  res.gamma = res.c0 = res.gamma_ci = nan;
  if (x.size() >= 2) {
    const auto fit = least_squares(x, y);
    res.gamma = fit.slope;
    res.c0 = std::exp(fit.intercept);
    res.gamma_ci = x.size() >= 3 ? slope_confidence_halfwidth(fit, 0.95) : nan;
  }
  for (const auto& c : res.cells) {
    std::cerr << "scan: eps=" << c.eps << " nu=" << c.nu << " max=" << c.max_monitored
              << (c.transition ? " transition" : "") << " (" << c.runtime_s << " s)\n";
  }
  return res;
}

json ScanResult::to_json() const {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["solver"] = solver;
  j["theta"] = theta;
  j["gamma"] = num(gamma);
  j["gamma_ci95"] = num(gamma_ci);
  j["c0"] = num(c0);
  j["n_fit"] = n_fit;
  j["all_censored"] = all_censored;
  for (const auto& c : cells) {
    j["cells"].push_back({{"eps", c.eps}, {"nu", c.nu}, {"max_monitored", num(c.max_monitored)},
                          {"transition", c.transition}});
  }
  for (const auto& t : thresholds) {
    j["thresholds"].push_back({{"nu", t.nu},
                               {"eps_lo", t.eps_lo},
                               {"eps_hi", num(t.eps_hi)},
                               {"eps_star", t.censored ? json(nullptr) : json(t.eps_star)},
                               {"censored", t.censored},
                               {"censored_low", t.censored_low},
                               {"bisection_steps", t.bisection_steps},
                               {"bracket_ratios", t.bracket_ratios},
                               {"monotonicity_violations", t.monotonicity_violations}});
  }
  return j;
}

}  // namespace couette::harness
