#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "couette/field.hpp"

namespace couette::spectral {

/// Random coefficients with envelope exp(-lambda |xi|^s), band-limited to the dealiased band
/// (optionally tighter via kmax / jmax), zero mean, normalized to unit L2 norm.
struct RandomFieldSpec {
  std::uint64_t seed = 1;
  double lambda = 1.0;
  double s = 1.0;
  int kmax = -1;  // -1: grid limit
  int jmax = -1;
  int lmax = -1;
  bool include_zero_k = true;
  /// Multiply by a smooth window supported in the middle half of the y period.
  bool confine = false;
};

struct ModeAmplitude {
  int k = 0;
  int j = 0;  // eta = j * 2 pi / Ly
  int l = 0;
  Complex amp{};
};

/// Sources for initial data on the command line and in config files:
///   random:seed=3,lambda=1,s=0.5[,kmax=..,jmax=..,confine=1,zero_k=0]
///   modes:k,j,re[,im];k,j,re[,im]           (2D; 3D uses k,j,l,re[,im])
///   <path>                                  snapshot prefix or file
struct InitSpec {
  enum class Kind { random, modes, file };
  Kind kind = Kind::random;
  RandomFieldSpec random;
  std::vector<ModeAmplitude> modes;
  std::filesystem::path file;

  static InitSpec parse(const std::string& text, int dims = 2);
};

SpectralField random_field(const GridSpec& grid, const RandomFieldSpec& spec);
/// Real field with a(k, j, l) = amp and a(-k, -j, -l) = conj(amp) for each entry.
SpectralField modes_field(const GridSpec& grid, const std::vector<ModeAmplitude>& modes);

/// Scalar initial field from an InitSpec; snapshots must match the grid.
SpectralField build_scalar(const GridSpec& grid, const InitSpec& spec);

/// Projects a 3-vector field onto k U1 + eta U2 + l U3 = 0 (t = 0 moving frame).
void leray_project(SpectralField& u);
/// Random divergence-free 3D velocity. With u2_zero the U2 component vanishes and k U1 + l U3 = 0.
SpectralField random_solenoidal(const GridSpec& grid, const RandomFieldSpec& spec, bool u2_zero = false);

}  // namespace couette::spectral
