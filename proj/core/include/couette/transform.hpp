#pragma once

#include <span>
#include <vector>

#include "couette/field.hpp"

namespace couette::spectral {

/// Real samples on the uniform grid x_i = i dx, y_j = j dy[, z_l = l dz], component-major,
/// row-major (x slowest) within a component.
struct PhysicalField {
  GridSpec grid;
  int components = 1;
  std::vector<double> values;
};

/// Throws ConfigError when the sample count does not match grid.size() * components.
SpectralField forward_transform(const GridSpec& grid, std::span<const double> values, int components = 1);
SpectralField forward_transform(const PhysicalField& samples);
PhysicalField inverse_transform(const SpectralField& f);

/// Raw complex transforms of one component in place. forward divides by N.
void fft_forward_inplace(const GridSpec& grid, std::span<Complex> data);
void fft_inverse_inplace(const GridSpec& grid, std::span<Complex> data);

/// sqrt(mean over the grid of sum_c v_c^2): the physical counterpart of the spectral L2 norm.
double l2_norm_physical(const PhysicalField& samples);

/// Pseudo-spectral product of two scalar fields with 2/3-rule dealiasing of inputs and output.
SpectralField product(const SpectralField& f, const SpectralField& g);

/// Samples of one scalar component in physical space as complex values (imaginary part ~ 0).
std::vector<Complex> to_physical(const SpectralField& f, int c = 0);
/// Inverse of to_physical for one scalar component; the input is consumed.
SpectralField from_physical(const GridSpec& grid, std::vector<Complex> samples);

/// Lab-frame samples u(x, y) = U(x - t y, y) of a 2D moving-frame field.
PhysicalField lab_frame_samples(const SpectralField& moving, double t);

}  // namespace couette::spectral
