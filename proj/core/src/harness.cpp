#include "couette/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "couette/errors.hpp"
#include "couette/initial_data.hpp"
#include "couette/linear2d.hpp"
#include "couette/linear3d.hpp"
#include "couette/multipliers.hpp"
#include "couette/nonlinear2d.hpp"
#include "couette/norms.hpp"
#include "couette/snapshot.hpp"
#include "couette/streak25d.hpp"
#include "couette/toy_models.hpp"

namespace couette::harness {

namespace fs = std::filesystem;
using nlohmann::json;
using spectral::SpectralField;

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12e", row[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void Table::write_csv(const fs::path& path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << to_csv();
}

std::vector<double> Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] != name) continue;
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r[i]);
    return v;
  }
  throw ConfigError("table has no column '" + name + "'");
}

Table Table::read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError(path.string() + " is empty");
  std::istringstream hs(line);
  for (std::string c; std::getline(hs, c, ',');) t.columns.push_back(c);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) {
      // strtod rather than stod: subnormal values set ERANGE but are valid
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size()) {
        throw ConfigError(path.string() + ": bad value '" + c + "'");
      }
      row.push_back(v);
    }
    if (row.size() != t.columns.size()) throw ConfigError(path.string() + ": ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[solver=" << solver_name(cfg.solver) << " nu=" << cfg.nu << " eps=" << cfg.eps << " grid=" << cfg.grid.nx
     << "x" << cfg.grid.ny;
  if (cfg.grid.dims == 3) os << "x" << cfg.grid.nz;
  os << " seed=" << cfg.seed << "]";
  return os.str();
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

spectral::InitSpec init_spec(const ExperimentConfig& cfg) {
  spectral::InitSpec spec = spectral::InitSpec::parse(cfg.init, cfg.grid.dims);
  if (spec.kind == spectral::InitSpec::Kind::random && cfg.init.find("seed=") == std::string::npos) {
    spec.random.seed = cfg.seed;
  }
  return spec;
}

SpectralField scalar_init(const ExperimentConfig& cfg) {
  SpectralField f = spectral::build_scalar(cfg.grid, init_spec(cfg));
  f *= cfg.eps;
  return f;
}

double velocity_norm(const SpectralField& omega, double t, const spectral::NormSpec& y) {
  return spectral::norm(linear2d::biot_savart(omega, t), y);
}

RunSummary run_linear2d(const ExperimentConfig& cfg) {
  const linear2d::LinearState2D init{0.0, scalar_init(cfg), cfg.nu};
  const auto times = linspace(0.0, cfg.t_max, cfg.samples);
  RunSummary r;
  r.table.columns = {"t", "norm_u1_neq", "norm_u2", "norm_omega_neq", "enstrophy"};
  for (double t : times) {
    const auto st = linear2d::evolve_linear2d(init, t);
    const auto d = linear2d::diagnostics(st);
    r.table.rows.push_back({d.t, d.norm_u1_neq, d.norm_u2, d.norm_omega_neq, d.enstrophy});
    r.max_monitored = std::max(r.max_monitored, velocity_norm(st.omega, t, cfg.y_norm));
  }
  r.summary["norm_initial_X"] = spectral::norm(init.omega, cfg.x_norm);
  try {
    const auto ds = linear2d::trajectory(init, times);
    const auto fit = linear2d::damping_rate_fit(ds, {std::min(10.0, 0.1 * cfg.t_max), cfg.t_max});
    r.summary["p1"] = fit.u1.exponent;
    r.summary["p2"] = fit.u2.exponent;
    r.summary["p1_residual"] = fit.u1.residual;
    r.summary["p2_residual"] = fit.u2.residual;
  } catch (const FitError& e) {
    r.summary["fit_error"] = e.what();
  }
  return r;
}

RunSummary run_linear3d(const ExperimentConfig& cfg) {
  SpectralField u;
  const auto spec = init_spec(cfg);
  if (spec.kind == spectral::InitSpec::Kind::random) {
    u = spectral::random_solenoidal(cfg.grid, spec.random);
  } else if (spec.kind == spectral::InitSpec::Kind::file) {
    auto snap = spectral::read_snapshot(spec.file);
    if (snap.field.grid() != cfg.grid || snap.field.components() != 3) {
      throw ConfigError("linear3d: snapshot does not hold a 3-vector on the configured grid");
    }
    u = std::move(snap.field);
  } else {
    throw ConfigError("linear3d: mode lists are not supported for vector data; use random or a snapshot");
  }
  u *= cfg.eps;
  const linear3d::LinearState3D init{0.0, u, cfg.nu};
  RunSummary r;
  r.table.columns = {"t", "norm_u2_neq", "norm_p", "norm_u1_neq", "norm_u3_neq", "norm_curl_u", "norm_u1_zero"};
  for (double t : linspace(0.0, cfg.t_max, cfg.samples)) {
    const auto st = linear3d::evolve_linear3d(init, t);
    const auto d = linear3d::diagnostics(st);
    r.table.rows.push_back({d.t, d.norm_u2_neq, d.norm_p, d.norm_u1_neq, d.norm_u3_neq, d.norm_curl_u, d.norm_u1_zero});
    r.max_monitored = std::max(r.max_monitored, spectral::norm(st.u, cfg.y_norm));
  }
  r.summary["divergence_defect_initial"] = linear3d::divergence_defect(u, 0.0);
  return r;
}

nonlinear2d::SolverConfig2D nl2d_config(const ExperimentConfig& cfg) {
  nonlinear2d::SolverConfig2D sc;
  sc.grid = cfg.grid;
  sc.nu = cfg.nu;
  sc.dt = cfg.dt > 0.0 ? cfg.dt : 0.02;
  sc.t_max = cfg.t_max;
  sc.sample_times = linspace(0.0, cfg.t_max, cfg.samples);
  sc.snapshot_times = cfg.snapshot_times;
  sc.epsilon = cfg.eps;
  sc.monitor_norms = {cfg.x_norm};
  sc.velocity_norm = cfg.y_norm;
  return sc;
}

using Snapshots = std::vector<std::pair<double, SpectralField>>;

RunSummary run_nl2d(const ExperimentConfig& cfg, Snapshots& snaps) {
  SpectralField w = spectral::build_scalar(cfg.grid, init_spec(cfg));
  const auto sc = nl2d_config(cfg);
  const auto tr = nonlinear2d::solve(w, sc);
  RunSummary r;
  r.table.columns = {"t",      "norm_u1_neq", "norm_u2",   "norm_omega_neq", "norm_omega_neq_X", "norm_u0",
                     "energy", "enstrophy",   "production", "dissipation",   "energy_budget"};
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const auto& s = tr.samples[i];
    r.table.rows.push_back({s.t, s.norm_u1_neq, s.norm_u2, s.norm_omega_neq, s.monitor.at(0), s.norm_u0, s.energy,
                            s.enstrophy, s.production, s.dissipation, tr.energy_budget(i) + s.dissipation});
    r.max_monitored = std::max(r.max_monitored, s.norm_u_y);
  }
  const auto ms = nonlinear2d::metastability_report(tr);
  r.summary["metastability_envelope_constant"] = ms.envelope_constant;
  r.summary["resolution_horizon"] = nonlinear2d::resolution_horizon(cfg.grid);
  r.summary["norm_initial_L2"] = tr.norm_initial;
  for (const auto& [t, f] : tr.snapshots) r.summary["snapshot_times"].push_back(t);
  snaps = tr.snapshots;
  return r;
}

streak25d::StreakState streak_init(const ExperimentConfig& cfg) {
  if (cfg.init == "random" || cfg.init == "default") {
    return streak25d::default_streak_data(cfg.grid, cfg.eps, cfg.nu, cfg.seed);
  }
  const auto spec = init_spec(cfg);
  SpectralField omega = spectral::build_scalar(cfg.grid, spec);
  const double n = spectral::l2_norm(streak25d::velocity_yz(omega));
  if (n > 0.0) omega *= cfg.eps / n;
  return {0.0, omega, SpectralField(cfg.grid, 1), cfg.nu};
}

RunSummary run_streak(const ExperimentConfig& cfg) {
  streak25d::StreakRunConfig rc;
  rc.nu = cfg.nu;
  rc.t_max = cfg.horizon();
  rc.dt_max = cfg.dt > 0.0 ? cfg.dt : 0.02 / cfg.nu;
  rc.sample_dt = rc.t_max / (cfg.samples - 1);
  const auto run = streak25d::streak_run(streak_init(cfg), rc);
  RunSummary r;
  r.table.columns = {"t", "norm_u1", "norm_u2", "energy_23"};
  for (const auto& s : run.samples) r.table.rows.push_back({s.t, s.norm_u1, s.norm_u2, s.energy_23});
  r.max_monitored = run.max_u1;
  r.summary["max_u1"] = run.max_u1;
  r.summary["argmax_t"] = run.argmax_t;
  r.summary["eps_over_nu"] = cfg.eps / cfg.nu;
  r.summary["perturbative"] = cfg.eps / cfg.nu <= 0.5;
  r.summary["steps"] = run.steps;
  return r;
}

RunSummary run_echo_toy(const ExperimentConfig& cfg) {
  toy_models::EchoChainState st;
  st.eta = cfg.eta;
  st.kappa = cfg.kappa;
  st.kmax = cfg.kmax;
  st.amps.assign(cfg.kmax, {});
  st.amps.back() = 1.0;
  const auto hist = toy_models::echo_chain_integrate(st, toy_models::LowSpectrum::uniform(cfg.kappa), 2.0 * cfg.eta,
                                                     cfg.samples);
  RunSummary r;
  r.table.columns = {"t"};
  for (int k = 1; k <= cfg.kmax; ++k) r.table.columns.push_back("abs_k" + std::to_string(k));
  for (std::size_t i = 0; i < hist.t.size(); ++i) {
    std::vector<double> row{hist.t[i]};
    for (const auto& a : hist.amps[i]) row.push_back(std::abs(a));
    r.table.rows.push_back(std::move(row));
  }
  const double g1 = std::abs(hist.amps.back().front());
  r.summary["growth_k1"] = g1;
  const double denom = 2.0 * std::sqrt(cfg.eta) - 0.5 * std::log(cfg.eta);
  if (g1 > 0.0 && denom > 0.0) r.summary["fitted_c"] = std::log(g1) / denom;
  return r;
}

RunSummary run_toy2d(const ExperimentConfig& cfg) {
  const auto g = toy_models::toy2d_two_mode(cfg.k, cfg.eta, cfg.kappa);
  const auto h = toy_models::toy2d_history(cfg.k, cfg.eta, cfg.kappa, cfg.samples);
  RunSummary r;
  r.table.columns = {"t", "abs_critical", "abs_noncritical"};
  for (std::size_t i = 0; i < h.t.size(); ++i) r.table.rows.push_back({h.t[i], h.a[i], h.b[i]});
  r.summary["G_C"] = g.g_c;
  r.summary["G_NC"] = g.g_nc;
  r.summary["exponent"] = g.exponent;
  r.summary["eta_over_k2"] = cfg.eta / (double(cfg.k) * cfg.k);
  return r;
}

RunSummary run_mult_audit(const ExperimentConfig& cfg) {
  // A few low modes suffice; the audit is per mode and the cost scales with the mode count.
  auto spec = init_spec(cfg);
  if (spec.kind == spectral::InitSpec::Kind::random) {
    if (spec.random.kmax < 0) spec.random.kmax = std::min(cfg.grid.kmax_retained(), 4);
    if (spec.random.jmax < 0) spec.random.jmax = std::min(cfg.grid.jmax_retained(), 32);
  }
  const SpectralField q0 = spectral::build_scalar(cfg.grid, spec);
  const std::vector<int> ks = {1, 2, 3, 4};
  const auto ys = linspace(-3.0, 3.0, 61), xs = linspace(-20.0, 20.0, 201);
  RunSummary r;
  r.table.columns = {"nu", "mprop_constant", "min_M", "c_nu", "energy_residual"};
  for (double nu : cfg.nu_grid) {
    const auto pts = multipliers::mprop_grid(nu, ks, ys, xs);
    double min_m = 1.0;
    for (const auto& p : pts) min_m = std::min(min_m, multipliers::ghost_M(p.t, p.k, p.eta, nu).m);
    const auto audit = multipliers::ed_energy_audit(q0, nu);
    r.table.rows.push_back({nu, multipliers::mprop_constant(pts, nu), min_m, audit.c_nu, audit.residual});
  }
  return r;
}

RunSummary dispatch(const ExperimentConfig& cfg, Snapshots& snaps) {
  switch (cfg.solver) {
    case SolverId::linear2d: return run_linear2d(cfg);
    case SolverId::linear3d: return run_linear3d(cfg);
    case SolverId::nl2d: return run_nl2d(cfg, snaps);
    case SolverId::streak: return run_streak(cfg);
    case SolverId::echo_toy: return run_echo_toy(cfg);
    case SolverId::toy2d: return run_toy2d(cfg);
    case SolverId::mult_audit: return run_mult_audit(cfg);
  }
  throw ConfigError("unknown solver");
}

json config_json(const ExperimentConfig& cfg) {
  return {{"solver", solver_name(cfg.solver)},
          {"grid", {{"dims", cfg.grid.dims}, {"Nx", cfg.grid.nx}, {"Ny", cfg.grid.ny}, {"Nz", cfg.grid.nz}, {"Ly", cfg.grid.ly}}},
          {"nu", cfg.nu},
          {"eps", cfg.eps},
          {"X", cfg.x_norm.to_string()},
          {"Y", cfg.y_norm.to_string()},
          {"t_max", cfg.horizon()},
          {"dt", cfg.dt},
          {"samples", cfg.samples},
          {"seed", cfg.seed},
          {"init", cfg.init}};
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg, bool write) {
  RunSummary r;
  Snapshots snaps;
  try {
    cfg.validate();
    r = dispatch(cfg, snaps);
  } catch (const std::exception& e) {
    std::throw_with_nested(ExperimentError(describe(cfg) + " " + e.what()));
  }
  r.solver = solver_name(cfg.solver);
  r.summary["config"] = config_json(cfg);
  r.summary["max_monitored"] = r.max_monitored;
  r.summary["columns"] = r.table.columns;
  if (!write) return r;
  fs::create_directories(cfg.out_dir);
  const fs::path csv = cfg.out_dir / (r.solver + ".csv");
  r.table.write_csv(csv);
  r.files.push_back(csv);
  {
    int i = 0;
    for (const auto& [t, f] : snaps) {
      const fs::path prefix = cfg.out_dir / ("omega_" + std::to_string(i++));
      spectral::write_snapshot(prefix, f, t);
      r.files.push_back(prefix.string() + ".bin");
    }
  }
  const fs::path js = cfg.out_dir / (r.solver + ".json");
  std::ofstream(js) << r.summary.dump(2) << '\n';
  r.files.push_back(js);
  return r;
}

}  // namespace couette::harness
