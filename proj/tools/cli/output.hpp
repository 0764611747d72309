#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spatialgen/grid.hpp"
#include "spatialgen/point_io.hpp"
#include "spatialgen/pointproc.hpp"

namespace spatialgen::cli {

enum class Format { GridBinary, Pgm, Csv, JsonMeta };

Format parse_format(const std::string& name);
std::string format_name(Format f);

/// Binary PGM (P5, maxval 255). Values map linearly min -> 0, max -> 255 over
/// unmasked cells; a constant field maps to 128 and masked cells to 0.
void write_pgm(const Field& field, const std::filesystem::path& path,
               const std::vector<std::uint8_t>* mask = nullptr);

struct Series {
  std::string suffix;
  std::vector<double> times;
  std::vector<double> values;
};

/// Everything one realization of a subcommand produces.
struct Artifact {
  std::optional<Field> field;
  std::vector<std::uint8_t> mask;
  std::optional<PointPattern> points;
  std::vector<TraceRow> trace;
  std::vector<Series> series;
};

/// Writes the requested formats under `base` (extension added per format) and
/// returns the paths written.
std::vector<std::filesystem::path> write_artifact(const Artifact& artifact,
                                                  const std::filesystem::path& base,
                                                  const std::set<Format>& formats);

}  // namespace spatialgen::cli
