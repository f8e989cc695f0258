#include "couette/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "couette/errors.hpp"
#include "couette/norms.hpp"
#include "couette/snapshot.hpp"
#include "couette/transform.hpp"

namespace couette::spectral {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

double to_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("init spec: bad number '" + s + "' in '" + ctx + "'");
}

int to_int(const std::string& s, const std::string& ctx) {
  const double v = to_double(s, ctx);
  if (v != std::floor(v)) throw ConfigError("init spec: expected an integer, got '" + s + "'");
  return static_cast<int>(v);
}

void fill_random(SpectralField& f, int c, const RandomFieldSpec& spec, std::mt19937_64& rng) {
  const GridSpec& g = f.grid();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for_each_mode(g, [&](int ix, int iy, int iz) {
    const double re = gauss(rng), im = gauss(rng);
    const int k = g.kx(ix), j = g.jy(iy), l = g.kz(iz);
    const bool keep = g.retained(ix, iy, iz) && (spec.kmax < 0 || std::abs(k) <= spec.kmax) &&
                      (spec.jmax < 0 || std::abs(j) <= spec.jmax) && (spec.lmax < 0 || std::abs(l) <= spec.lmax) &&
                      (spec.include_zero_k || k != 0) && !(k == 0 && j == 0 && l == 0);
    if (!keep) {
      f.at(c, ix, iy, iz) = Complex{};
      return;
    }
    const double xi = wavenumber_magnitude(k, g.eta(iy), l);
    f.at(c, ix, iy, iz) = Complex(re, im) * std::exp(-spec.lambda * std::pow(xi, spec.s));
  });
}

void confine_y(SpectralField& f) {
  const GridSpec& g = f.grid();
  // C-infinity window equal to 1 on the middle third, supported on the middle half.
  auto window = [&](double y) {
    const double u = std::abs(y / g.ly - 0.5);
    if (u >= 0.25) return 0.0;
    if (u <= 1.0 / 6.0) return 1.0;
    const double x = (0.25 - u) / (0.25 - 1.0 / 6.0);
    const double a = std::exp(-1.0 / x), b = x < 1.0 ? std::exp(-1.0 / (1.0 - x)) : 0.0;
    return a / (a + b);
  };
  for (int c = 0; c < f.components(); ++c) {
    auto phys = to_physical(f, c);
    for_each_mode(g, [&](int ix, int iy, int iz) { phys[g.index(ix, iy, iz)] *= window(iy * g.dy()); });
    SpectralField back = from_physical(g, std::move(phys));
    back.dealias();
    back.enforce_reality();
    f.assign(c, back);
  }
}

void normalize(SpectralField& f) {
  const double n = l2_norm(f);
  if (n > 0.0) f *= 1.0 / n;
}

}  // namespace

InitSpec InitSpec::parse(const std::string& text, int dims) {
  InitSpec out;
  if (text.rfind("random", 0) == 0) {
    out.kind = Kind::random;
    const auto colon = text.find(':');
    if (colon == std::string::npos) return out;
    for (const auto& kv : split(text.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("init spec: expected key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      auto& r = out.random;
      if (key == "seed") r.seed = static_cast<std::uint64_t>(to_double(val, text));
      else if (key == "lambda") r.lambda = to_double(val, text);
      else if (key == "s") r.s = to_double(val, text);
      else if (key == "kmax") r.kmax = to_int(val, text);
      else if (key == "jmax") r.jmax = to_int(val, text);
      else if (key == "lmax") r.lmax = to_int(val, text);
      else if (key == "confine") r.confine = to_int(val, text) != 0;
      else if (key == "zero_k") r.include_zero_k = to_int(val, text) != 0;
      else throw ConfigError("init spec: unknown key '" + key + "'");
    }
    return out;
  }
  if (text.rfind("modes:", 0) == 0) {
    out.kind = Kind::modes;
    const std::size_t nidx = dims == 3 ? 3 : 2;
    for (const auto& entry : split(text.substr(6), ';')) {
      const auto parts = split(entry, ',');
      if (parts.size() != nidx + 1 && parts.size() != nidx + 2) {
        throw ConfigError("init spec: mode entry '" + entry + "' needs " + std::to_string(nidx) +
                          " indices and re[,im]");
      }
      ModeAmplitude m;
      m.k = to_int(parts[0], text);
      m.j = to_int(parts[1], text);
      if (dims == 3) m.l = to_int(parts[2], text);
      const double re = to_double(parts[nidx], text);
      const double im = parts.size() == nidx + 2 ? to_double(parts[nidx + 1], text) : 0.0;
      m.amp = Complex(re, im);
      out.modes.push_back(m);
    }
    if (out.modes.empty()) throw ConfigError("init spec: empty mode list");
    return out;
  }
  out.kind = Kind::file;
  out.file = text;
  return out;
}

SpectralField random_field(const GridSpec& grid, const RandomFieldSpec& spec) {
  SpectralField f(grid, 1);
  std::mt19937_64 rng(spec.seed);
  fill_random(f, 0, spec, rng);
  f.enforce_reality();
  if (spec.confine) confine_y(f);
  normalize(f);
  return f;
}

SpectralField modes_field(const GridSpec& grid, const std::vector<ModeAmplitude>& modes) {
  SpectralField f(grid, 1);
  for (const auto& m : modes) {
    Complex& a = f.mode(0, m.k, m.j, m.l);
    if (m.k == 0 && m.j == 0 && m.l == 0) {
      a += Complex(m.amp.real(), 0.0);
      continue;
    }
    a += m.amp;
    f.mode(0, -m.k, -m.j, -m.l) += std::conj(m.amp);
  }
  return f;
}

SpectralField build_scalar(const GridSpec& grid, const InitSpec& spec) {
  switch (spec.kind) {
    case InitSpec::Kind::random:
      return random_field(grid, spec.random);
    case InitSpec::Kind::modes:
      return modes_field(grid, spec.modes);
    case InitSpec::Kind::file: {
      Snapshot snap = read_snapshot(spec.file);
      if (snap.field.grid() != grid || snap.field.components() != 1) {
        throw ConfigError("init spec: snapshot " + spec.file.string() + " does not match the configured grid");
      }
      return std::move(snap.field);
    }
  }
  throw ConfigError("init spec: unknown kind");
}

void leray_project(SpectralField& u) {
  const GridSpec& g = u.grid();
  if (g.dims != 3 || u.components() != 3) throw ConfigError("leray_project: 3-vector on a 3D grid required");
  for_each_mode(g, [&](int ix, int iy, int iz) {
    const double xi[3] = {static_cast<double>(g.kx(ix)), g.eta(iy), static_cast<double>(g.kz(iz))};
    const double m2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (m2 == 0.0) {
      for (int c = 0; c < 3; ++c) u.at(c, ix, iy, iz) = Complex{};
      return;
    }
    Complex dot{};
    for (int c = 0; c < 3; ++c) dot += xi[c] * u.at(c, ix, iy, iz);
    for (int c = 0; c < 3; ++c) u.at(c, ix, iy, iz) -= xi[c] * dot / m2;
  });
}

SpectralField random_solenoidal(const GridSpec& grid, const RandomFieldSpec& spec, bool u2_zero) {
  if (grid.dims != 3) throw ConfigError("random_solenoidal: 3D grid required");
  SpectralField u(grid, 3);
  std::mt19937_64 rng(spec.seed);
  for (int c = 0; c < 3; ++c) fill_random(u, c, spec, rng);
  u.enforce_reality();
  if (u2_zero) {
    for_each_mode(grid, [&](int ix, int iy, int iz) {
      u.at(1, ix, iy, iz) = Complex{};
      const double k = grid.kx(ix), l = grid.kz(iz);
      const double m2 = k * k + l * l;
      if (m2 == 0.0) return;
      const Complex dot = k * u.at(0, ix, iy, iz) + l * u.at(2, ix, iy, iz);
      u.at(0, ix, iy, iz) -= k * dot / m2;
      u.at(2, ix, iy, iz) -= l * dot / m2;
    });
  } else {
    leray_project(u);
  }
  normalize(u);
  return u;
}

}  // namespace couette::spectral
