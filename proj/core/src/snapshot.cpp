#include "couette/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "couette/errors.hpp"

namespace couette::spectral {

namespace fs = std::filesystem;

namespace {

static_assert(sizeof(double) == 8);

void put_le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  os.write(reinterpret_cast<const char*>(&bits), 8);
}

double get_le(const char* p) {
  std::uint64_t bits;
  std::memcpy(&bits, p, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

fs::path strip(const fs::path& p) {
  if (p.extension() == ".bin" || p.extension() == ".json") return fs::path(p).replace_extension();
  return p;
}

fs::path with_ext(const fs::path& prefix, const char* ext) { return fs::path(prefix.string() + ext); }

}  // namespace

void write_snapshot(const fs::path& prefix, const SpectralField& f, double time) {
  const GridSpec& g = f.grid();
  nlohmann::json meta = {{"dims", g.dims}, {"Nx", g.nx}, {"Ny", g.ny}, {"Nz", g.nz}, {"Ly", g.ly},
                         {"components", f.components()}, {"time", time}, {"frame", "moving"}};
  {
    std::ofstream js(with_ext(prefix, ".json"));
    if (!js) throw ConfigError("snapshot: cannot write " + with_ext(prefix, ".json").string());
    js << meta.dump(2) << '\n';
  }
  std::ofstream bin(with_ext(prefix, ".bin"), std::ios::binary);
  if (!bin) throw ConfigError("snapshot: cannot write " + with_ext(prefix, ".bin").string());
  for (const auto& a : f.data()) {
    put_le(bin, a.real());
    put_le(bin, a.imag());
  }
}

Snapshot read_snapshot(const fs::path& path) {
  const fs::path prefix = strip(path);
  std::ifstream js(with_ext(prefix, ".json"));
  if (!js) throw ConfigError("snapshot: missing " + with_ext(prefix, ".json").string());
  nlohmann::json meta;
  try {
    js >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot: bad sidecar: ") + e.what());
  }
  GridSpec g;
  int components = 1;
  double time = 0.0;
  try {
    g.dims = meta.at("dims").get<int>();
    g.nx = meta.at("Nx").get<int>();
    g.ny = meta.at("Ny").get<int>();
    g.nz = meta.value("Nz", 1);
    g.ly = meta.at("Ly").get<double>();
    components = meta.at("components").get<int>();
    time = meta.value("time", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("snapshot: incomplete sidecar: ") + e.what());
  }
  SpectralField f(g, components);
  std::ifstream bin(with_ext(prefix, ".bin"), std::ios::binary);
  if (!bin) throw ConfigError("snapshot: missing " + with_ext(prefix, ".bin").string());
  std::vector<char> raw((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
  if (raw.size() != f.data().size() * 16) {
    throw ConfigError("snapshot: " + with_ext(prefix, ".bin").string() + " has " + std::to_string(raw.size()) +
                      " bytes, expected " + std::to_string(f.data().size() * 16));
  }
  auto data = f.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = Complex(get_le(&raw[16 * i]), get_le(&raw[16 * i + 8]));
  return {std::move(f), time};
}

}  // namespace couette::spectral
