#include "couette/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "couette/errors.hpp"

namespace couette::spectral {

SpectralField::SpectralField(GridSpec grid, int components) : grid_(grid), components_(components) {
  grid_.validate();
  if (components != 1 && components != grid_.dims) {
    throw ConfigError("field: components must be 1 or equal to the grid dimension");
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.size(), Complex{});
}

std::span<Complex> SpectralField::component(int c) {
  return std::span<Complex>(coeffs_).subspan(offset(c), grid_.size());
}

std::span<const Complex> SpectralField::component(int c) const {
  return std::span<const Complex>(coeffs_).subspan(offset(c), grid_.size());
}

Complex& SpectralField::mode(int c, int k, int j, int l) {
  const int ix = GridSpec::storage_index(k, grid_.nx);
  const int iy = GridSpec::storage_index(j, grid_.ny);
  const int iz = grid_.dims == 3 ? GridSpec::storage_index(l, grid_.nz) : (l == 0 ? 0 : -1);
  if (ix < 0 || iy < 0 || iz < 0) {
    std::ostringstream os;
    os << "field: mode (" << k << ", " << j << ", " << l << ") is outside the grid";
    throw ArgumentError(os.str());
  }
  return at(c, ix, iy, iz);
}

const Complex& SpectralField::mode(int c, int k, int j, int l) const {
  return const_cast<SpectralField*>(this)->mode(c, k, j, l);
}

void SpectralField::set_real_mode(int c, int k, int j, int l, Complex value) {
  if (k == 0 && j == 0 && l == 0) {
    mode(c, 0, 0, 0) = Complex(value.real(), 0.0);
    return;
  }
  mode(c, k, j, l) = value;
  mode(c, -k, -j, -l) = std::conj(value);
}

SpectralField SpectralField::extract(int c) const {
  SpectralField out(grid_, 1);
  std::copy_n(component(c).begin(), grid_.size(), out.coeffs_.begin());
  return out;
}

void SpectralField::assign(int c, const SpectralField& scalar) {
  if (scalar.grid_ != grid_ || scalar.components_ != 1) throw ConfigError("field: assign needs a scalar on the same grid");
  std::copy(scalar.coeffs_.begin(), scalar.coeffs_.end(), component(c).begin());
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.grid_ != grid_ || other.components_ != components_) throw ConfigError("field: shape mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.grid_ != grid_ || other.components_ != components_) throw ConfigError("field: shape mismatch in -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& a : coeffs_) a *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex s) {
  for (auto& a : coeffs_) a *= s;
  return *this;
}

void SpectralField::apply_symbol(const std::function<Complex(int, double, int)>& symbol) {
  for_each_mode(grid_, [&](int ix, int iy, int iz) {
    const Complex m = symbol(grid_.kx(ix), grid_.eta(iy), grid_.kz(iz));
    for (int c = 0; c < components_; ++c) at(c, ix, iy, iz) *= m;
  });
}

void SpectralField::dealias() {
  for_each_mode(grid_, [&](int ix, int iy, int iz) {
    if (grid_.retained(ix, iy, iz)) return;
    for (int c = 0; c < components_; ++c) at(c, ix, iy, iz) = Complex{};
  });
}

void SpectralField::drop_nyquist() {
  for_each_mode(grid_, [&](int ix, int iy, int iz) {
    if (grid_.representable(ix, iy, iz)) return;
    for (int c = 0; c < components_; ++c) at(c, ix, iy, iz) = Complex{};
  });
}

namespace {
int mirror(int i, int n) { return i == 0 ? 0 : n - i; }
}  // namespace

double SpectralField::reality_defect() const {
  double defect = 0.0;
  for (int c = 0; c < components_; ++c) {
    for_each_mode(grid_, [&](int ix, int iy, int iz) {
      const Complex a = at(c, ix, iy, iz);
      const Complex b = at(c, mirror(ix, grid_.nx), mirror(iy, grid_.ny), grid_.dims == 3 ? mirror(iz, grid_.nz) : 0);
      defect = std::max(defect, std::abs(a - std::conj(b)));
    });
  }
  const double scale = max_abs();
  return scale > 0.0 ? defect / scale : 0.0;
}

void SpectralField::enforce_reality() {
  std::vector<Complex> out(coeffs_.size());
  for (int c = 0; c < components_; ++c) {
    for_each_mode(grid_, [&](int ix, int iy, int iz) {
      const Complex a = at(c, ix, iy, iz);
      const Complex b = at(c, mirror(ix, grid_.nx), mirror(iy, grid_.ny), grid_.dims == 3 ? mirror(iz, grid_.nz) : 0);
      out[offset(c) + grid_.index(ix, iy, iz)] = 0.5 * (a + std::conj(b));
    });
  }
  coeffs_ = std::move(out);
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); });
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& a : coeffs_) m = std::max(m, std::abs(a));
  return m;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

SpectralField project_zero(const SpectralField& f) {
  SpectralField out = f;
  const GridSpec& g = f.grid();
  for_each_mode(g, [&](int ix, int iy, int iz) {
    if (ix == 0) return;
    for (int c = 0; c < f.components(); ++c) out.at(c, ix, iy, iz) = Complex{};
  });
  return out;
}

SpectralField project_nonzero(const SpectralField& f) {
  SpectralField out = f;
  const GridSpec& g = f.grid();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int iz = 0; iz < g.nz; ++iz)
      for (int c = 0; c < f.components(); ++c) out.at(c, 0, iy, iz) = Complex{};
  return out;
}

}  // namespace couette::spectral
