#include "couette/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "couette/errors.hpp"

namespace couette::spectral {

namespace {
void check_count(const char* name, int n) {
  if (n < 4 || n % 2 != 0) {
    std::ostringstream os;
    os << "grid: " << name << " = " << n << " must be even and >= 4";
    throw ConfigError(os.str());
  }
}
}  // namespace

GridSpec GridSpec::make2d(int nx, int ny, double ly) {
  GridSpec g{2, nx, ny, 1, ly};
  g.validate();
  return g;
}

GridSpec GridSpec::make3d(int nx, int ny, int nz, double ly) {
  GridSpec g{3, nx, ny, nz, ly};
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (dims != 2 && dims != 3) throw ConfigError("grid: dims must be 2 or 3");
  check_count("Nx", nx);
  check_count("Ny", ny);
  if (dims == 3) {
    check_count("Nz", nz);
  } else if (nz != 1) {
    throw ConfigError("grid: Nz must be 1 for a 2D grid");
  }
  if (!(ly > 0.0) || !std::isfinite(ly)) throw ConfigError("grid: Ly must be positive and finite");
}

int GridSpec::storage_index(int m, int n) noexcept {
  if (std::abs(m) >= n / 2) return -1;
  return m >= 0 ? m : m + n;
}

bool GridSpec::representable(int ix, int iy, int iz) const noexcept {
  if (std::abs(kx(ix)) >= nx / 2 || std::abs(jy(iy)) >= ny / 2) return false;
  if (dims == 3 && std::abs(wavenumber(iz, nz)) >= nz / 2) return false;
  return true;
}

bool GridSpec::retained(int ix, int iy, int iz) const noexcept {
  if (std::abs(kx(ix)) > kmax_retained() || std::abs(jy(iy)) > jmax_retained()) return false;
  if (dims == 3 && std::abs(wavenumber(iz, nz)) > lmax_retained()) return false;
  return true;
}

}  // namespace couette::spectral
