#include "couette/paraproduct.hpp"

#include <cmath>
#include <vector>

#include "couette/errors.hpp"
#include "couette/norms.hpp"
#include "couette/transform.hpp"

namespace couette::spectral {

namespace {

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

struct Mode {
  int k, j, l;
  double mag;
  Complex a;
};

std::vector<Mode> retained_modes(const SpectralField& f) {
  std::vector<Mode> out;
  const GridSpec& g = f.grid();
  for_each_mode(g, [&](int ix, int iy, int iz) {
    const Complex a = f.at(0, ix, iy, iz);
    if (a == Complex{} || !g.retained(ix, iy, iz)) return;
    out.push_back({g.kx(ix), g.jy(iy), g.kz(iz), wavenumber_magnitude(g.kx(ix), g.eta(iy), g.kz(iz)), a});
  });
  return out;
}

}  // namespace

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump(x);
  return a / (a + bump(1.0 - x));
}

double lohi_weight(double xi_f, double xi_g) {
  if (xi_g == 0.0) return 0.0;
  if (xi_f == 0.0) return 1.0;
  return smooth_step(std::log2(xi_g / xi_f));
}

double hilo_weight(double xi_f, double xi_g) {
  if (xi_g == 0.0) return 1.0;
  if (xi_f == 0.0) return 0.0;
  return smooth_step(-std::log2(xi_g / xi_f));
}

ParaproductSplit paraproduct_split(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid() || f.components() != 1 || g.components() != 1) {
    throw ConfigError("paraproduct: scalar fields on a shared grid required");
  }
  const GridSpec& grid = f.grid();
  ParaproductSplit out{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
  const auto fm = retained_modes(f);
  const auto gm = retained_modes(g);
  const int kmax = grid.kmax_retained(), jmax = grid.jmax_retained(), lmax = grid.lmax_retained();
  for (const Mode& a : fm) {
    for (const Mode& b : gm) {
      const int k = a.k + b.k, j = a.j + b.j, l = a.l + b.l;
      if (std::abs(k) > kmax || std::abs(j) > jmax || std::abs(l) > lmax) continue;
      const Complex c = a.a * b.a;
      const double wl = lohi_weight(a.mag, b.mag);
      const double wh = hilo_weight(a.mag, b.mag);
      const int ix = GridSpec::storage_index(k, grid.nx), iy = GridSpec::storage_index(j, grid.ny);
      const int iz = grid.dims == 3 ? GridSpec::storage_index(l, grid.nz) : 0;
      out.lo_hi.at(0, ix, iy, iz) += wl * c;
      out.hi_lo.at(0, ix, iy, iz) += wh * c;
      out.hi_hi.at(0, ix, iy, iz) += (1.0 - wl - wh) * c;
    }
  }
  return out;
}

double gevrey_product_constant(double s) {
  return std::max(std::pow(2.0, s) - 1.0, std::pow(1.5, s) / (1.0 + std::pow(2.0, -s)));
}

namespace {
double bracket_gevrey_norm(const SpectralField& f, double lambda, double s, double p) {
  SpectralField w = f;
  w.apply_symbol([p](int k, double eta, int l) {
    const double xi = wavenumber_magnitude(k, eta, l);
    return Complex(std::pow(1.0 + xi * xi, 0.5 * p), 0.0);
  });
  return norm(w, NormSpec::gevrey(lambda, s));
}
}  // namespace

double gevrey_product_ratio(const SpectralField& f, const SpectralField& g, double lambda, double s, double p) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("gevrey_product_ratio: s must lie in (0, 1)");
  if (p <= 0.5 * f.grid().dims) throw ArgumentError("gevrey_product_ratio: p must exceed dims/2");
  const double c = gevrey_product_constant(s);
  const NormSpec gev = NormSpec::gevrey(lambda, s);
  const double num = norm(product(f, g), gev);
  const double den = norm(f, gev) * bracket_gevrey_norm(g, c * lambda, s, p) +
                     norm(g, gev) * bracket_gevrey_norm(f, c * lambda, s, p);
  if (den == 0.0) throw UndefinedRatioError("gevrey_product_ratio: denominator vanishes");
  return num / den;
}

}  // namespace couette::spectral
