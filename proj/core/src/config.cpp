#include "couette/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "couette/errors.hpp"

namespace couette::harness {

namespace pt = boost::property_tree;

namespace {

constexpr std::pair<SolverId, const char*> kSolvers[] = {
    {SolverId::linear2d, "linear2d"}, {SolverId::linear3d, "linear3d"}, {SolverId::nl2d, "nl2d"},
    {SolverId::streak, "streak"},     {SolverId::echo_toy, "echo-toy"}, {SolverId::toy2d, "toy2d"},
    {SolverId::mult_audit, "mult-audit"},
};

double number(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("config: bad number '" + s + "' for " + ctx);
}

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto raw = tree.get_optional<std::string>(key);
  if (!raw) return fallback;
  std::string v = *raw;
  v.erase(0, v.find_first_not_of(" \t"));
  v.erase(v.find_last_not_of(" \t") + 1);
  if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else if constexpr (std::is_floating_point_v<T>) {
    return number(v, key);
  } else {
    try {
      std::size_t used = 0;
      const long long n = std::stoll(v, &used);
      if (used == v.size() && (std::is_signed_v<T> || n >= 0)) return static_cast<T>(n);
    } catch (const std::exception&) {
    }
    throw ConfigError("config: bad integer '" + v + "' for " + key);
  }
}

std::vector<double> get_grid(const pt::ptree& tree, const std::string& key, std::vector<double> fallback) {
  const auto v = tree.get_optional<std::string>(key);
  return v ? parse_grid(*v) : fallback;
}

ExperimentConfig from_tree(const pt::ptree& tree) {
  ExperimentConfig c;
  c.solver = parse_solver(get<std::string>(tree, "experiment.solver", "linear2d"));
  c.seed = get<std::uint64_t>(tree, "experiment.seed", 1);
  c.out_dir = get<std::string>(tree, "experiment.out", "out");
  c.init = get<std::string>(tree, "experiment.init", "random");

  const int dims = get<int>(tree, "grid.dims", c.solver == SolverId::linear3d ? 3 : 2);
  spectral::GridSpec g;
  g.dims = dims;
  if (c.solver == SolverId::streak) {
    // (z, y) torus stored with z on the first axis
    g.nx = get<int>(tree, "grid.nz", 64);
    g.ny = get<int>(tree, "grid.ny", 64);
    g.nz = 1;
    g.ly = get<double>(tree, "grid.ly", 2.0 * std::numbers::pi);
  } else if (c.solver == SolverId::nl2d) {
    // T_res = 17 at the default resolution
    g.nx = get<int>(tree, "grid.nx", 16);
    g.ny = get<int>(tree, "grid.ny", 512);
    g.nz = 1;
    g.ly = get<double>(tree, "grid.ly", 2.0 * std::numbers::pi);
  } else {
    g.nx = get<int>(tree, "grid.nx", dims == 3 ? 16 : 64);
    g.ny = get<int>(tree, "grid.ny", dims == 3 ? 64 : 512);
    g.nz = dims == 3 ? get<int>(tree, "grid.nz", 16) : 1;
    g.ly = get<double>(tree, "grid.ly", spectral::kDefaultLy);
  }
  c.grid = g;

  const bool streak = c.solver == SolverId::streak;
  c.nu = get<double>(tree, "physics.nu", streak ? 1e-3 : 0.0);
  c.eps = get<double>(tree, "physics.eps", 1.0);
  c.t_max = get<double>(tree, "physics.t_max", streak ? 2.0 / c.nu : c.solver == SolverId::nl2d ? 10.0 : 100.0);
  c.t_max_nu = get<double>(tree, "physics.t_max_nu", streak && !tree.get_optional<double>("physics.t_max") ? 2.0 : 0.0);
  c.dt = get<double>(tree, "physics.dt", 0.0);
  c.samples = get<int>(tree, "physics.samples", 101);
  c.snapshot_times = get_grid(tree, "physics.snapshots", {});

  c.x_norm = spectral::NormSpec::parse(get<std::string>(tree, "norms.X", "L2"));
  c.y_norm = spectral::NormSpec::parse(get<std::string>(tree, "norms.Y", "L2"));

  c.eta = get<double>(tree, "toy.eta", 100.0);
  c.kappa = get<double>(tree, "toy.kappa", 0.2);
  c.k = get<int>(tree, "toy.k", 2);
  c.kmax = get<int>(tree, "toy.kmax", 10);

  c.nu_grid = get_grid(tree, "audit.nu_grid", c.nu_grid);

  c.scan.eps_grid = get_grid(tree, "scan.eps_grid", {});
  c.scan.nu_grid = get_grid(tree, "scan.nu_grid", {});
  c.scan.theta = get<double>(tree, "scan.theta", 0.1);
  c.scan.bracket_ratio = get<double>(tree, "scan.bracket_ratio", 1.05);
  c.validate();
  return c;
}

}  // namespace

SolverId parse_solver(const std::string& name) {
  for (const auto& [id, n] : kSolvers)
    if (name == n) return id;
  std::string valid;
  for (const auto& [id, n] : kSolvers) valid += std::string(valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown solver id '" + name + "' (expected one of: " + valid + ")");
}

std::string solver_name(SolverId id) {
  for (const auto& [i, n] : kSolvers)
    if (i == id) return n;
  return "?";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::istringstream is(text.substr(4));
    for (std::string p; std::getline(is, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("grid spec: expected log:lo:hi:n, got '" + text + "'");
    const double lo = number(parts[0], text), hi = number(parts[1], text);
    const int n = static_cast<int>(number(parts[2], text));
    if (!(lo > 0.0 && hi > 0.0) || n < 1) throw ConfigError("grid spec: log grid needs lo, hi > 0 and n >= 1");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo * std::pow(hi / lo, double(i) / (n - 1)));
    return out;
  }
  std::istringstream is(text);
  for (std::string p; std::getline(is, p, ',');) {
    if (!p.empty()) out.push_back(number(p, text));
  }
  return out;
}

void ExperimentConfig::validate() const {
  grid.validate();
  if (solver == SolverId::linear3d && grid.dims != 3) throw ConfigError("config: linear3d needs a 3D grid");
  if (solver != SolverId::linear3d && grid.dims != 2) throw ConfigError("config: " + solver_name(solver) + " needs a 2D grid");
  if (nu < 0.0) throw ConfigError("config: nu must be >= 0");
  if (eps < 0.0) throw ConfigError("config: eps must be >= 0");
  if (t_max < 0.0) throw ConfigError("config: t_max must be >= 0");
  if (t_max_nu < 0.0) throw ConfigError("config: t_max_nu must be >= 0");
  if (!(dt >= 0.0)) throw ConfigError("config: dt must be >= 0 (0 selects the solver default)");
  if (samples < 2) throw ConfigError("config: samples must be >= 2");
  if (solver == SolverId::streak && !(nu > 0.0)) throw ConfigError("config: streak needs nu > 0");
  if (scan.theta <= 0.0) throw ConfigError("config: theta must be positive");
  if (scan.bracket_ratio <= 1.0) throw ConfigError("config: bracket_ratio must exceed 1");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ptree_error& e) {
    throw ConfigError("config: cannot read " + path.string() + ": " + e.what());
  }
  return from_tree(tree);
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ptree_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return from_tree(tree);
}

}  // namespace couette::harness
