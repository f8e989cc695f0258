#include "couette/norms.hpp"

#include <cmath>
#include <sstream>

#include "couette/errors.hpp"

namespace couette::spectral {

namespace {
constexpr double kMaxExponent = 700.0;

double parse_number(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("norm spec: cannot parse '" + whole + "'");
  }
  if (used != text.size()) throw ConfigError("norm spec: trailing characters in '" + whole + "'");
  return v;
}
}  // namespace

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "L2" || text == "l2") return l2();
  auto body = [&](std::size_t skip) { return text.substr(skip); };
  if (text.rfind("H^", 0) == 0) return sobolev(parse_number(body(2), text));
  if (text.rfind("sobolev:", 0) == 0) return sobolev(parse_number(body(8), text));
  std::string rest;
  if (text.rfind("G^", 0) == 0) rest = body(2);
  else if (text.rfind("gevrey:", 0) == 0) rest = body(7);
  else throw ConfigError("norm spec: unknown kind in '" + text + "'");
  const auto comma = rest.find(',');
  if (comma == std::string::npos) throw ConfigError("norm spec: gevrey needs 'lambda,s' in '" + text + "'");
  NormSpec g = gevrey(parse_number(rest.substr(0, comma), text), parse_number(rest.substr(comma + 1), text));
  if (g.lambda < 0.0) throw ConfigError("norm spec: lambda must be >= 0");
  return g;
}

std::string NormSpec::to_string() const {
  std::ostringstream os;
  if (kind == Kind::sobolev) os << "H^" << s;
  else os << "G^" << lambda << ',' << s;
  return os.str();
}

double NormSpec::weight_sq(double xi_abs) const {
  if (kind == Kind::sobolev) return std::pow(1.0 + xi_abs, 2.0 * s);
  if (lambda == 0.0) return 1.0;
  const double e = 2.0 * lambda * std::pow(xi_abs, s);
  if (!(e <= kMaxExponent)) {
    std::ostringstream os;
    os << "gevrey weight overflows at |xi| = " << xi_abs << " (exponent " << e << ")";
    throw RangeError(os.str());
  }
  return std::exp(e);
}

double norm(const SpectralField& f, const NormSpec& spec) {
  const GridSpec& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz) {
    double amp = 0.0;
    for (int c = 0; c < f.components(); ++c) amp += std::norm(f.at(c, ix, iy, iz));
    if (amp == 0.0) return;
    const double xi = wavenumber_magnitude(g.kx(ix), g.eta(iy), g.kz(iz));
    if (spec.kind == NormSpec::Kind::gevrey && spec.lambda * std::pow(xi, spec.s) * 2.0 > kMaxExponent) {
      std::ostringstream os;
      os << "gevrey weight overflows at xi = (" << g.kx(ix) << ", " << g.eta(iy);
      if (g.dims == 3) os << ", " << g.kz(iz);
      os << ")";
      throw RangeError(os.str());
    }
    sum += amp * spec.weight_sq(xi);
  });
  return std::sqrt(sum);
}

double l2_norm_sq(const SpectralField& f) {
  double sum = 0.0;
  for (const auto& a : f.data()) sum += std::norm(a);
  return sum;
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

}  // namespace couette::spectral
