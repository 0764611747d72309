#include "spatialgen/grid_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "spatialgen/errors.hpp"

namespace spatialgen {

static_assert(std::endian::native == std::endian::little,
              "grid binary I/O assumes a little-endian host");

namespace {

template <class T>
void put(std::ostream& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw Error("grid binary: truncated header");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

void write_grid_binary(std::ostream& out, const Field& field) {
  const Grid2D& g = field.grid();
  out.write("SPGF", 4);
  put<std::uint16_t>(out, kGridFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.nx));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.ny));
  put<double>(out, g.dx);
  put<double>(out, g.dy);
  put<double>(out, g.origin_x);
  put<double>(out, g.origin_y);
  const auto values = field.values();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw Error("grid binary: write failed");
}

void write_grid_binary(const std::filesystem::path& path, const Field& field) {
  auto out = open_out(path);
  write_grid_binary(out, field);
}

void write_grid_binary(const std::filesystem::path& path, const MaskedField& masked) {
  if (masked.mask.size() != masked.field.size()) {
    throw InvalidParameter("write_grid_binary: mask size does not match field");
  }
  auto out = open_out(path);
  write_grid_binary(out, masked.field);
  out.write(reinterpret_cast<const char*>(masked.mask.data()),
            static_cast<std::streamsize>(masked.mask.size()));
  if (!out) throw Error("grid binary: write failed");
}

Field read_grid_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "SPGF", 4) != 0) {
    throw Error("grid binary: bad magic");
  }
  const auto version = get<std::uint16_t>(in);
  if (version != kGridFormatVersion) {
    throw Error("grid binary: unsupported version " + std::to_string(version));
  }
  const auto nx = get<std::uint32_t>(in);
  const auto ny = get<std::uint32_t>(in);
  const auto dx = get<double>(in);
  const auto dy = get<double>(in);
  const auto ox = get<double>(in);
  const auto oy = get<double>(in);
  Grid2D grid(nx, ny, dx, dy, ox, oy);
  std::vector<double> values(grid.size());
  if (!in.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double)))) {
    throw Error("grid binary: truncated values");
  }
  return Field(grid, std::move(values));
}

Field read_grid_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid_binary(in);
}

MaskedField read_masked_grid_binary(const std::filesystem::path& path) {
  auto in = open_in(path);
  MaskedField out{read_grid_binary(in), {}};
  out.mask.resize(out.field.size());
  if (!in.read(reinterpret_cast<char*>(out.mask.data()),
               static_cast<std::streamsize>(out.mask.size()))) {
    throw Error("grid binary: missing or truncated mask");
  }
  return out;
}

}  // namespace spatialgen
