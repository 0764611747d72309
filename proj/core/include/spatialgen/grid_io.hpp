#pragma once

#include <filesystem>
#include <iosfwd>

#include "spatialgen/grid.hpp"

namespace spatialgen {

// Grid binary layout ("SPGF"), all little-endian:
//   char[4] magic, u16 version = 1, u32 nx, u32 ny,
//   f64 dx, f64 dy, f64 origin_x, f64 origin_y,
//   ny*nx f64 values row-major,
//   [masked files only] ny*nx mask bytes.

inline constexpr std::uint16_t kGridFormatVersion = 1;

void write_grid_binary(std::ostream& out, const Field& field);
void write_grid_binary(const std::filesystem::path& path, const Field& field);
void write_grid_binary(const std::filesystem::path& path, const MaskedField& field);

Field read_grid_binary(std::istream& in);
Field read_grid_binary(const std::filesystem::path& path);
/// Reads a masked file; the mask must be present.
MaskedField read_masked_grid_binary(const std::filesystem::path& path);

}  // namespace spatialgen
