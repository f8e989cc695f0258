#include "couette/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "couette/errors.hpp"

namespace couette::spectral {
namespace {

// FFTW planning is not thread safe, execution with the new-array interface is.
// Plans are created once per (shape, direction) and never destroyed.
using PlanKey = std::tuple<int, int, int, int, int>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan cached_plan(int rank, int n0, int n1, int n2, int sign) {
  static std::map<PlanKey, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(plan_mutex());
  const PlanKey key{rank, n0, n1, n2, sign};
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  const int n[3] = {n0, n1, n2};
  std::size_t total = 1;
  for (int r = 0; r < rank; ++r) total *= static_cast<std::size_t>(n[r]);
  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_dft(rank, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (p == nullptr) throw ConfigError("fft: planner failed");
  plans.emplace(key, p);
  return p;
}

fftw_plan grid_plan(const GridSpec& g, int sign) {
  return g.dims == 3 ? cached_plan(3, g.nx, g.ny, g.nz, sign) : cached_plan(2, g.nx, g.ny, 0, sign);
}

void execute(fftw_plan p, Complex* data) {
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace

void fft_forward_inplace(const GridSpec& grid, std::span<Complex> data) {
  if (data.size() != grid.size()) throw ConfigError("fft: buffer size does not match grid");
  execute(grid_plan(grid, FFTW_FORWARD), data.data());
  const double inv = 1.0 / static_cast<double>(grid.size());
  for (auto& a : data) a *= inv;
}

void fft_inverse_inplace(const GridSpec& grid, std::span<Complex> data) {
  if (data.size() != grid.size()) throw ConfigError("fft: buffer size does not match grid");
  execute(grid_plan(grid, FFTW_BACKWARD), data.data());
}

SpectralField forward_transform(const GridSpec& grid, std::span<const double> values, int components) {
  grid.validate();
  if (values.size() != grid.size() * static_cast<std::size_t>(components)) {
    throw ConfigError("forward_transform: sample count " + std::to_string(values.size()) + " does not match grid (" +
                      std::to_string(grid.size() * static_cast<std::size_t>(components)) + ")");
  }
  SpectralField out(grid, components);
  for (int c = 0; c < components; ++c) {
    auto dst = out.component(c);
    for (std::size_t i = 0; i < grid.size(); ++i) dst[i] = Complex(values[c * grid.size() + i], 0.0);
    fft_forward_inplace(grid, dst);
  }
  return out;
}

SpectralField forward_transform(const PhysicalField& samples) {
  return forward_transform(samples.grid, samples.values, samples.components);
}

std::vector<Complex> to_physical(const SpectralField& f, int c) {
  auto src = f.component(c);
  std::vector<Complex> buf(src.begin(), src.end());
  fft_inverse_inplace(f.grid(), buf);
  return buf;
}

SpectralField from_physical(const GridSpec& grid, std::vector<Complex> samples) {
  fft_forward_inplace(grid, samples);
  SpectralField out(grid, 1);
  std::copy(samples.begin(), samples.end(), out.data().begin());
  return out;
}

PhysicalField inverse_transform(const SpectralField& f) {
  PhysicalField out{f.grid(), f.components(), std::vector<double>(f.modes() * f.components())};
  for (int c = 0; c < f.components(); ++c) {
    const auto buf = to_physical(f, c);
    for (std::size_t i = 0; i < buf.size(); ++i) out.values[c * f.modes() + i] = buf[i].real();
  }
  return out;
}

double l2_norm_physical(const PhysicalField& samples) {
  double s = 0.0;
  for (double v : samples.values) s += v * v;
  return std::sqrt(s / static_cast<double>(samples.grid.size()));
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid() || f.components() != 1 || g.components() != 1) {
    throw ConfigError("product: scalar fields on a shared grid required");
  }
  SpectralField fa = f, ga = g;
  fa.dealias();
  ga.dealias();
  auto pf = to_physical(fa);
  const auto pg = to_physical(ga);
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] = Complex(pf[i].real() * pg[i].real(), 0.0);
  SpectralField out = from_physical(f.grid(), std::move(pf));
  out.dealias();
  return out;
}

PhysicalField lab_frame_samples(const SpectralField& moving, double t) {
  const GridSpec& g = moving.grid();
  if (g.dims != 2) throw ConfigError("lab_frame_samples: 2D fields only");
  fftw_plan py = cached_plan(1, g.ny, 0, 0, FFTW_BACKWARD);
  fftw_plan px = cached_plan(1, g.nx, 0, 0, FFTW_BACKWARD);
  PhysicalField out{g, moving.components(), std::vector<double>(g.size() * moving.components())};
  std::vector<Complex> rows(g.size());
  std::vector<Complex> col(g.nx);
  for (int c = 0; c < moving.components(); ++c) {
    auto src = moving.component(c);
    std::copy(src.begin(), src.end(), rows.begin());
    for (int ix = 0; ix < g.nx; ++ix) {
      Complex* row = rows.data() + g.index(ix, 0);
      execute(py, row);
      const double k = g.kx(ix);
      for (int iy = 0; iy < g.ny; ++iy) row[iy] *= std::polar(1.0, -k * t * iy * g.dy());
    }
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < g.nx; ++ix) col[ix] = rows[g.index(ix, iy)];
      execute(px, col.data());
      for (int ix = 0; ix < g.nx; ++ix) out.values[c * g.size() + g.index(ix, iy)] = col[ix].real();
    }
  }
  return out;
}

}  // namespace couette::spectral
