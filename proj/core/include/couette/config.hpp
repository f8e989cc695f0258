#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "couette/grid.hpp"
#include "couette/norms.hpp"

namespace couette::harness {

enum class SolverId { linear2d, linear3d, nl2d, streak, echo_toy, toy2d, mult_audit };

/// Throws ConfigError naming the valid ids.
SolverId parse_solver(const std::string& name);
std::string solver_name(SolverId id);

struct ScanSpec {
  std::vector<double> eps_grid;
  std::vector<double> nu_grid;
  double theta = 0.1;
  double bracket_ratio = 1.05;
};

struct ExperimentConfig {
  SolverId solver = SolverId::linear2d;
  spectral::GridSpec grid = spectral::GridSpec::make2d(64, 512);
  double nu = 0.0;
  double eps = 1.0;
  spectral::NormSpec x_norm = spectral::NormSpec::l2();
  spectral::NormSpec y_norm = spectral::NormSpec::l2();
  double t_max = 100.0;
  /// > 0: t_max = t_max_nu / nu, so scans over nu keep the horizon in viscous units (streak default 2).
  double t_max_nu = 0.0;
  double dt = 0.0;  // 0: solver default (nl2d 0.02, streak dt_max 0.02/nu)
  int samples = 101;
  std::uint64_t seed = 1;
  std::string init = "random";
  std::vector<double> snapshot_times;
  std::filesystem::path out_dir = "out";

  // echo-toy / toy2d
  double eta = 100.0;
  double kappa = 0.2;
  int k = 2;
  int kmax = 10;

  // mult-audit
  std::vector<double> nu_grid = {1e-2, 1e-3, 1e-4, 1e-5};

  ScanSpec scan;

  void validate() const;
  double horizon() const { return t_max_nu > 0.0 && nu > 0.0 ? t_max_nu / nu : t_max; }
};

/// INI file, sections [experiment] [grid] [physics] [norms] [toy] [audit] [scan]; see README.
ExperimentConfig load_config(const std::filesystem::path& path);
/// Same keys read from a string (used by tests).
ExperimentConfig parse_config(const std::string& text);

/// "1e-3,1e-2" or "log:1e-4:1e-2:7" (log-spaced, inclusive).
std::vector<double> parse_grid(const std::string& text);

}  // namespace couette::harness
