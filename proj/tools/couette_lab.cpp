// couette-lab: command line front end for the solvers and the experiment harness.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "couette/config.hpp"
#include "couette/errors.hpp"
#include "couette/fit.hpp"
#include "couette/harness.hpp"
#include "couette/streak25d.hpp"

namespace fs = std::filesystem;
using namespace couette;
using namespace couette::harness;
using nlohmann::json;

namespace {

constexpr int kExitCensored = 2;

// "8pi", "6.283", "2*pi"
double parse_length(std::string s) {
  double scale = 1.0;
  for (const char* suffix : {"*pi", "pi"}) {
    const std::string suf(suffix);
    if (s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0) {
      s.resize(s.size() - suf.size());
      scale = std::numbers::pi;
      break;
    }
  }
  if (s.empty()) return scale;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw ConfigError("bad length '" + s + "'");
  return v * scale;
}

// "A,B[,Ly]"
void parse_grid_flag(const std::string& text, int& a, int& b, double& ly) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  for (std::string p; std::getline(is, p, ',');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("--grid expects N1,N2[,Ly], got '" + text + "'");
  try {
    a = std::stoi(parts[0]);
    b = std::stoi(parts[1]);
  } catch (const std::exception&) {
    throw ConfigError("--grid expects integer point counts, got '" + text + "'");
  }
  if (parts.size() == 3) ly = parse_length(parts[2]);
}

struct Common {
  std::string out;
  std::string init = "random";
  double nu = 0.0;
  double eps = 1.0;
  double t_max = 0.0;
  int samples = 101;
  std::uint64_t seed = 1;
};

void print_summary(const RunSummary& r, bool wrote) {
  if (wrote) {
    for (const auto& f : r.files) std::cerr << "wrote " << f.string() << '\n';
    std::cout << r.summary.dump(2) << '\n';
  } else {
    std::cout << r.table.to_csv();
    std::cerr << r.summary.dump() << '\n';
  }
}

int execute(ExperimentConfig cfg, const std::string& out) {
  const bool write = !out.empty();
  if (write) cfg.out_dir = out;
  print_summary(run_experiment(cfg, write), write);
  return 0;
}

ExperimentConfig base_config(SolverId id, const Common& c) {
  ExperimentConfig cfg;
  cfg.solver = id;
  cfg.nu = c.nu;
  cfg.eps = c.eps;
  cfg.samples = c.samples;
  cfg.seed = c.seed;
  cfg.init = c.init;
  return cfg;
}

void add_common(CLI::App* app, Common& c, bool with_eps) {
  app->add_option("--nu", c.nu, "viscosity")->check(CLI::NonNegativeNumber);
  if (with_eps) app->add_option("--eps", c.eps, "initial data size")->check(CLI::NonNegativeNumber);
  app->add_option("--tmax", c.t_max, "final time");
  app->add_option("--samples", c.samples, "number of output samples")->check(CLI::PositiveNumber);
  app->add_option("--seed", c.seed, "seed for random initial data");
  app->add_option("--out", c.out, "output directory (default: CSV on stdout)");
}

int write_scan(const ScanResult& res, const std::string& out) {
  const json j = res.to_json();
  if (!out.empty()) {
    fs::create_directories(out);
    const fs::path p = fs::path(out) / "scan.json";
    std::ofstream(p) << j.dump(2) << '\n';
    std::cerr << "wrote " << p.string() << '\n';
  }
  std::cout << j.dump(2) << '\n';
  for (const auto& t : res.thresholds) {
    if (t.censored) std::cerr << "censored: nu=" << t.nu << " (no transition up to eps=" << t.eps_lo << ")\n";
    if (t.censored_low) std::cerr << "censored: nu=" << t.nu << " (smallest eps already transitional)\n";
    if (t.monotonicity_violations) {
      std::cerr << "monotonicity: nu=" << t.nu << " has " << t.monotonicity_violations
                << " stable cell(s) above the first transition\n";
    }
  }
  return res.all_censored ? kExitCensored : 0;
}

int report(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("report: " + dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto& p = e.path();
    if (p.extension() == ".json" && p.filename() != "report.json" && p.stem().string().rfind("omega_", 0) != 0) {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  json rep = json::object();
  bool censored = false;
  for (const auto& p : files) {
    std::ifstream is(p);
    json j;
    try {
      is >> j;
    } catch (const json::exception& e) {
      throw ConfigError("report: cannot parse " + p.string() + ": " + e.what());
    }
    if (j.contains("all_censored") && j["all_censored"].get<bool>()) censored = true;
    rep[p.stem().string()] = std::move(j);
  }
  if (rep.empty()) throw ConfigError("report: no summary files in " + dir.string());
  const fs::path out = dir / "report.json";
  std::ofstream(out) << rep.dump(2) << '\n';
  std::cerr << "wrote " << out.string() << '\n';
  std::cout << rep.dump(2) << '\n';
  return censored ? kExitCensored : 0;
}

int fit_csv(const fs::path& csv, const std::string& xcol, const std::string& ycol, const std::vector<double>& window) {
  const Table t = Table::read_csv(csv);
  const auto x = t.column(xcol), y = t.column(ycol);
  FitWindow w;
  if (window.size() == 2) w = {window[0], window[1]};
  const auto f = fit_power_law(x, y, w);
  std::cout << json{{"column", ycol}, {"exponent", f.exponent}, {"prefactor", f.prefactor},
                    {"residual", f.residual}, {"n", f.n}}
                   .dump(2)
            << '\n';
  return 0;
}

void print_error(const std::exception& e, int depth = 0) {
  std::cerr << (depth ? "  caused by: " : "error: ") << e.what() << '\n';
  try {
    std::rethrow_if_nested(e);
  } catch (const std::exception& inner) {
    print_error(inner, depth + 1);
  } catch (...) {
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Couette flow stability laboratory"};
  app.require_subcommand(1);
  int rc = 0;

  std::string config_path, out;
  int jobs = 0;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("--config", config_path, "INI config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides experiment.out)");
  run->callback([&] {
    auto cfg = load_config(config_path);
    if (!out.empty()) cfg.out_dir = out;
    print_summary(run_experiment(cfg, true), true);
  });

  auto* scan = app.add_subcommand("scan", "threshold scan over the [scan] eps and nu grids");
  scan->add_option("--config", config_path, "INI config")->required()->check(CLI::ExistingFile);
  scan->add_option("--out", out, "output directory (overrides experiment.out)");
  scan->add_option("--jobs", jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  scan->callback([&] {
    const auto cfg = load_config(config_path);
    rc = write_scan(threshold_scan(cfg, jobs), out.empty() ? cfg.out_dir.string() : out);
  });

  std::string csv_path, xcol = "t", ycol;
  std::vector<double> window;
  auto* fit = app.add_subcommand("fit", "log-log power law fit of a CSV column");
  fit->add_option("csv", csv_path, "CSV file written by a solver")->required()->check(CLI::ExistingFile);
  fit->add_option("--column", ycol, "column to fit")->required();
  fit->add_option("--x", xcol, "abscissa column");
  fit->add_option("--window", window, "lo hi")->expected(2);
  fit->callback([&] { rc = fit_csv(csv_path, xcol, ycol, window); });

  std::string report_dir;
  auto* rep = app.add_subcommand("report", "merge the JSON summaries of an output directory");
  rep->add_option("--out", report_dir, "output directory to summarize");
  rep->add_option("--config", config_path, "config whose experiment.out is summarized")->check(CLI::ExistingFile);
  rep->callback([&] {
    if (report_dir.empty() && !config_path.empty()) report_dir = load_config(config_path).out_dir.string();
    if (report_dir.empty()) throw ConfigError("report: give --out or --config");
    rc = report(report_dir);
  });

  Common c;
  auto* l2 = app.add_subcommand("linear2d", "exact linearized 2D vorticity");
  add_common(l2, c, true);
  l2->add_option("--init", c.init, "random:..., modes:k,j,re[,im];... or a snapshot");
  l2->callback([&] {
    auto cfg = base_config(SolverId::linear2d, c);
    cfg.t_max = c.t_max > 0.0 ? c.t_max : 100.0;
    rc = execute(cfg, c.out);
  });

  auto* l3 = app.add_subcommand("linear3d", "exact linearized 3D velocity");
  add_common(l3, c, true);
  l3->add_option("--init", c.init, "random:... or a snapshot");
  l3->callback([&] {
    auto cfg = base_config(SolverId::linear3d, c);
    cfg.grid = spectral::GridSpec::make3d(16, 64, 16);
    cfg.t_max = c.t_max > 0.0 ? c.t_max : 100.0;
    rc = execute(cfg, c.out);
  });

  std::string grid = "16,512,2pi";
  double dt = 0.0;
  std::vector<double> snapshots;
  auto* nl = app.add_subcommand("nl2d", "nonlinear 2D Navier-Stokes in the moving frame");
  add_common(nl, c, true);
  nl->add_option("--init", c.init, "random:..., modes:... or a snapshot");
  nl->add_option("--grid", grid, "Nx,Ny,Ly");
  nl->add_option("--dt", dt, "time step (default 0.02)");
  nl->add_option("--snapshots", snapshots, "snapshot times")->delimiter(',');
  nl->callback([&] {
    auto cfg = base_config(SolverId::nl2d, c);
    int nx = 0, ny = 0;
    double ly = 2.0 * std::numbers::pi;
    parse_grid_flag(grid, nx, ny, ly);
    cfg.grid = spectral::GridSpec::make2d(nx, ny, ly);
    cfg.t_max = c.t_max > 0.0 ? c.t_max : 10.0;
    cfg.dt = dt;
    cfg.snapshot_times = snapshots;
    rc = execute(cfg, c.out);
  });

  std::string sgrid = "64,64,2pi";
  auto* st = app.add_subcommand("streak", "x-independent 3D streak with lift-up");
  add_common(st, c, true);
  st->add_option("--grid", sgrid, "Ny,Nz,Ly");
  st->add_option("--dt", dt, "maximum time step (default 0.02/nu)");
  st->callback([&] {
    auto cfg = base_config(SolverId::streak, c);
    if (cfg.nu <= 0.0) cfg.nu = 1e-3;
    int ny = 0, nz = 0;
    double ly = 2.0 * std::numbers::pi;
    parse_grid_flag(sgrid, ny, nz, ly);
    cfg.grid = spectral::GridSpec::make2d(nz, ny, ly);
    cfg.t_max = c.t_max > 0.0 ? c.t_max : 2.0 / cfg.nu;
    cfg.t_max_nu = c.t_max > 0.0 ? 0.0 : 2.0;
    cfg.dt = dt;
    rc = execute(cfg, c.out);
  });

  std::string eps_grid = "log:1e-6:1e-3:7", nu_grid = "3e-3,1e-3,3e-4,1e-4";
  double theta = 0.1;
  bool threshold = false;
  auto* ss = app.add_subcommand("streak-scan", "maximal streak amplitude on an (eps, nu) grid");
  ss->add_option("--eps-grid", eps_grid, "eps values: a,b,... or log:lo:hi:n");
  ss->add_option("--nu-grid", nu_grid, "nu values: a,b,... or log:lo:hi:n");
  ss->add_option("--grid", sgrid, "Ny,Nz,Ly");
  ss->add_option("--jobs", jobs, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  ss->add_flag("--threshold", threshold, "bisect for eps* and fit gamma instead of tabulating");
  ss->add_option("--theta", theta, "transition threshold on max ||u1||");
  ss->add_option("--out", out, "output directory");
  ss->callback([&] {
    int ny = 0, nz = 0;
    double ly = 2.0 * std::numbers::pi;
    parse_grid_flag(sgrid, ny, nz, ly);
    const auto g = spectral::GridSpec::make2d(nz, ny, ly);
    const auto eps = parse_grid(eps_grid), nus = parse_grid(nu_grid);
    if (threshold) {
      ExperimentConfig cfg;
      cfg.solver = SolverId::streak;
      cfg.grid = g;
      cfg.nu = nus.front();
      cfg.t_max_nu = 2.0;
      cfg.scan = {eps, nus, theta, 1.05};
      rc = write_scan(threshold_scan(cfg, jobs), out);
      return;
    }
    Table t;
    t.columns = {"eps", "nu", "max_u1", "argmax_t", "max_u1_nu_over_eps", "perturbative"};
    for (const auto& cell : streak25d::streak_growth_scan(g, eps, nus, jobs)) {
      t.rows.push_back({cell.eps, cell.nu, cell.max_u1, cell.argmax_t, cell.max_u1 * cell.nu / cell.eps,
                        cell.perturbative ? 1.0 : 0.0});
    }
    if (!out.empty()) {
      fs::create_directories(out);
      t.write_csv(fs::path(out) / "streak_scan.csv");
    }
    std::cout << t.to_csv();
  });

  double eta = 100.0, kappa = 0.2;
  int kmax = 10, k = 2;
  auto* et = app.add_subcommand("echo-toy", "echo-chain amplitude model");
  et->add_option("--eta", eta, "frequency eta")->check(CLI::PositiveNumber);
  et->add_option("--kappa", kappa, "low-mode amplitude");
  et->add_option("--kmax", kmax, "highest x wavenumber (data seeded there)")->check(CLI::PositiveNumber);
  et->add_option("--samples", c.samples, "number of output samples");
  et->add_option("--out", c.out, "output directory");
  et->callback([&] {
    auto cfg = base_config(SolverId::echo_toy, c);
    cfg.eta = eta;
    cfg.kappa = kappa;
    cfg.kmax = kmax;
    rc = execute(cfg, c.out);
  });

  auto* t2 = app.add_subcommand("toy2d", "two-mode growth across one critical window");
  t2->add_option("--eta", eta, "frequency eta (>= k^2)")->check(CLI::PositiveNumber);
  t2->add_option("--k", k, "critical wavenumber")->check(CLI::PositiveNumber);
  t2->add_option("--kappa", kappa, "low-mode amplitude");
  t2->add_option("--samples", c.samples, "number of output samples");
  t2->add_option("--out", c.out, "output directory");
  t2->callback([&] {
    auto cfg = base_config(SolverId::toy2d, c);
    cfg.eta = eta;
    cfg.k = k;
    cfg.kappa = kappa;
    rc = execute(cfg, c.out);
  });

  std::string audit_nu = "1e-2,1e-3,1e-4,1e-5", grid_spec = "16,64,8pi";
  auto* ma = app.add_subcommand("mult-audit", "ghost multiplier constants and energy audit");
  ma->add_option("--nu-grid", audit_nu, "nu values: a,b,... or log:lo:hi:n");
  ma->add_option("--grid-spec", grid_spec, "Nx,Ny,Ly of the audited field");
  ma->add_option("--init", c.init, "random:... or modes:...");
  ma->add_option("--seed", c.seed, "seed for random data");
  ma->add_option("--out", c.out, "output directory");
  ma->callback([&] {
    auto cfg = base_config(SolverId::mult_audit, c);
    int nx = 0, ny = 0;
    double ly = spectral::kDefaultLy;
    parse_grid_flag(grid_spec, nx, ny, ly);
    cfg.grid = spectral::GridSpec::make2d(nx, ny, ly);
    cfg.nu_grid = parse_grid(audit_nu);
    if (cfg.nu_grid.empty()) throw ConfigError("--nu-grid is empty");
    rc = execute(cfg, c.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    print_error(e);
    return 1;
  }
  return rc;
}
