#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "couette/grid.hpp"

namespace couette::spectral {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar or vector field on a GridSpec.
///
/// Coefficients a(k, eta[, l]) follow the synthesis convention
///   f(x, y[, z]) = sum a exp(i (k x + eta y [+ l z])),
/// so a constant field 1 has a(0, 0) = 1 and norms are volume averaged.
/// Layout is component-major, then GridSpec::index order.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(GridSpec grid, int components = 1);

  const GridSpec& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }
  std::size_t modes() const noexcept { return grid_.size(); }
  bool empty() const noexcept { return coeffs_.empty(); }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  std::span<Complex> data() noexcept { return coeffs_; }
  std::span<const Complex> data() const noexcept { return coeffs_; }

  Complex& at(int c, int ix, int iy, int iz = 0) { return coeffs_[offset(c) + grid_.index(ix, iy, iz)]; }
  const Complex& at(int c, int ix, int iy, int iz = 0) const {
    return coeffs_[offset(c) + grid_.index(ix, iy, iz)];
  }

  /// Coefficient addressed by integer wavenumbers (k, j[, l]) with eta = j * eta_step.
  Complex& mode(int c, int k, int j, int l = 0);
  const Complex& mode(int c, int k, int j, int l = 0) const;

  /// Sets a(k, j, l) = value and a(-k, -j, -l) = conj(value).
  void set_real_mode(int c, int k, int j, int l, Complex value);

  SpectralField extract(int c) const;
  void assign(int c, const SpectralField& scalar);

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(Complex s);

  /// Multiplies every coefficient by symbol(k, eta, l). The symbol sees k, l as integers and eta in physical units.
  void apply_symbol(const std::function<Complex(int, double, int)>& symbol);

  /// Zeroes everything outside the 2/3-rule band.
  void dealias();
  /// Zeroes the Nyquist planes (|index| = N/2) on every axis.
  void drop_nyquist();

  /// Max over modes of |a(xi) - conj(a(-xi))| relative to max |a|.
  double reality_defect() const;
  /// Replaces a by (a(xi) + conj a(-xi)) / 2.
  void enforce_reality();

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

 private:
  std::size_t offset(int c) const noexcept { return static_cast<std::size_t>(c) * grid_.size(); }

  GridSpec grid_{};
  int components_ = 0;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Visits every storage index (ix, iy, iz) of the grid.
template <typename F>
void for_each_mode(const GridSpec& g, F&& f) {
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      for (int iz = 0; iz < g.nz; ++iz) f(ix, iy, iz);
}

/// Keep only k = 0 coefficients (x-average).
SpectralField project_zero(const SpectralField& f);
/// Keep only k != 0 coefficients.
SpectralField project_nonzero(const SpectralField& f);

}  // namespace couette::spectral
