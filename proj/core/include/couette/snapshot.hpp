#pragma once

#include <filesystem>

#include "couette/field.hpp"

namespace couette::spectral {

struct Snapshot {
  SpectralField field;
  double time = 0.0;
};

/// Writes <prefix>.bin (little-endian f64 interleaved re, im in storage order, component major) and
/// <prefix>.json {dims, Nx, Ny, Nz, Ly, components, time, frame}.
void write_snapshot(const std::filesystem::path& prefix, const SpectralField& f, double time);
/// Accepts the prefix or either file of the pair. Throws ConfigError on malformed or mismatched files.
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace couette::spectral
