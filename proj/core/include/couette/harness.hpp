#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "couette/config.hpp"

namespace couette::harness {

/// Solver failure annotated with the configuration that produced it; the original exception is
/// nested (std::rethrow_if_nested).
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Header line plus one line per row, values printed with %.12e.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
  /// Values of a named column; throws ConfigError if absent.
  std::vector<double> column(const std::string& name) const;
  static Table read_csv(const std::filesystem::path& path);
};

struct RunSummary {
  std::string solver;
  Table table;
  nlohmann::json summary;
  /// max over samples of the monitored norm (velocity in Y for linear2d / nl2d, ||u1|| for streak).
  double max_monitored = 0.0;
  std::vector<std::filesystem::path> files;
};

/// Dispatches to the configured solver. With write = true the CSV, snapshots and summary JSON
/// go to cfg.out_dir/<solver>.{csv,json}.
RunSummary run_experiment(const ExperimentConfig& cfg, bool write = true);

/// Context prefix such as "[solver=nl2d nu=1e-05 eps=0.001 grid=16x768 seed=1]".
std::string describe(const ExperimentConfig& cfg);

struct ScanCellResult {
  double eps = 0.0;
  double nu = 0.0;
  double max_monitored = 0.0;
  bool transition = false;
  double runtime_s = 0.0;  // reported on stderr only; never written to files
};

struct NuThreshold {
  double nu = 0.0;
  double eps_lo = 0.0;   // largest eps found stable
  double eps_hi = 0.0;   // smallest eps found transitional
  double eps_star = 0.0; // sqrt(eps_lo eps_hi)
  bool censored = false;       // no transition in the eps range
  bool censored_low = false;   // smallest eps already transitional
  int bisection_steps = 0;
  std::vector<double> bracket_ratios;  // after each bisection step
  int monotonicity_violations = 0;
};

struct ScanResult {
  std::string solver;
  double theta = 0.1;
  std::vector<ScanCellResult> cells;  // grid cells and bisection probes
  std::vector<NuThreshold> thresholds;
  double gamma = 0.0;
  double gamma_ci = 0.0;  // 95% half width
  double c0 = 0.0;        // eps* ~ c0 nu^gamma
  int n_fit = 0;
  bool all_censored = false;

  nlohmann::json to_json() const;
};

/// max_t ||u(t)||_Y for one (eps, nu) cell of cfg.
double monitored_max(const ExperimentConfig& cfg);

/// Per nu: evaluate the eps grid, then bisect (geometrically) between the last stable and first
/// transitional eps until the bracket ratio falls below scan.bracket_ratio. gamma is the slope of
/// log eps* against log nu over uncensored nu. Throws ConfigError when fewer than 4 nu values
/// spanning 1.5 decades or fewer than 6 eps values are given.
ScanResult threshold_scan(const ExperimentConfig& base, int jobs = 0);

}  // namespace couette::harness
