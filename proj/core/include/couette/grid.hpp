#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace couette::spectral {

inline constexpr double kDefaultLy = 8.0 * std::numbers::pi;

/// Truncated torus T_x(2pi) x T_y(Ly) [x T_z(2pi)].
///
/// x and z wavenumbers are integers; y wavenumbers are eta = (2 pi / Ly) j.
/// Storage is FFT order along every axis: index i holds wavenumber i for
/// i < N/2 and i - N otherwise. The Nyquist index N/2 is never populated.
struct GridSpec {
  int dims = 2;
  int nx = 0;
  int ny = 0;
  int nz = 1;
  double ly = kDefaultLy;

  static GridSpec make2d(int nx, int ny, double ly = kDefaultLy);
  static GridSpec make3d(int nx, int ny, int nz, double ly = kDefaultLy);

  /// Throws ConfigError unless dims is 2 or 3, every count is even and >= 4, and Ly > 0.
  void validate() const;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  std::size_t index(int ix, int iy, int iz = 0) const noexcept {
    return (static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(iy)) *
               static_cast<std::size_t>(nz) +
           static_cast<std::size_t>(iz);
  }

  static int wavenumber(int i, int n) noexcept { return i < n / 2 ? i : i - n; }
  /// Storage index of integer wavenumber m along an axis of length n; -1 if not representable.
  static int storage_index(int m, int n) noexcept;

  int kx(int ix) const noexcept { return wavenumber(ix, nx); }
  int jy(int iy) const noexcept { return wavenumber(iy, ny); }
  int kz(int iz) const noexcept { return dims == 3 ? wavenumber(iz, nz) : 0; }
  double eta_step() const noexcept { return 2.0 * std::numbers::pi / ly; }
  double eta(int iy) const noexcept { return eta_step() * jy(iy); }

  double dx() const noexcept { return 2.0 * std::numbers::pi / nx; }
  double dy() const noexcept { return ly / ny; }
  double dz() const noexcept { return 2.0 * std::numbers::pi / nz; }

  /// Largest |index| kept by the 2/3 rule along an axis of length n.
  static int dealias_limit(int n) noexcept { return (n - 1) / 3; }
  int kmax_retained() const noexcept { return dealias_limit(nx); }
  int jmax_retained() const noexcept { return dealias_limit(ny); }
  int lmax_retained() const noexcept { return dims == 3 ? dealias_limit(nz) : 0; }
  double eta_max_retained() const noexcept { return eta_step() * jmax_retained(); }

  /// Index lies strictly inside the Nyquist band (|index| < N/2) on every axis.
  bool representable(int ix, int iy, int iz = 0) const noexcept;
  /// Index survives the 2/3 dealiasing truncation on every axis.
  bool retained(int ix, int iy, int iz = 0) const noexcept;

  bool operator==(const GridSpec&) const = default;
};

/// Euclidean wavenumber magnitude |(k, eta[, l])| with eta in physical units.
inline double wavenumber_magnitude(double k, double eta, double l = 0.0) noexcept {
  return std::sqrt(k * k + eta * eta + l * l);
}

}  // namespace couette::spectral
