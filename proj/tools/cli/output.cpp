#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "spatialgen/errors.hpp"
#include "spatialgen/grid_io.hpp"

namespace spatialgen::cli {

Format parse_format(const std::string& name) {
  if (name == "grid-binary") return Format::GridBinary;
  if (name == "pgm") return Format::Pgm;
  if (name == "csv") return Format::Csv;
  if (name == "json-meta") return Format::JsonMeta;
  throw InvalidParameter("unknown format '" + name + "'");
}

std::string format_name(Format f) {
  switch (f) {
    case Format::GridBinary: return "grid-binary";
    case Format::Pgm: return "pgm";
    case Format::Csv: return "csv";
    case Format::JsonMeta: return "json-meta";
  }
  return "";
}

void write_pgm(const Field& field, const std::filesystem::path& path,
               const std::vector<std::uint8_t>* mask) {
  auto included = [&](std::size_t k) { return mask == nullptr || mask->empty() || (*mask)[k]; };
  const auto values = field.values();
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!included(k)) continue;
    if (!std::isfinite(values[k])) throw InvalidParameter("write_pgm: field has non-finite values");
    lo = std::min(lo, values[k]);
    hi = std::max(hi, values[k]);
  }
  std::vector<unsigned char> bytes(values.size(), 0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!included(k)) continue;
    bytes[k] = hi > lo ? static_cast<unsigned char>(std::lround(255.0 * (values[k] - lo) / (hi - lo)))
                       : 128;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P5\n" << field.nx() << ' ' << field.ny() << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& base, const std::string& suffix) {
  return std::filesystem::path(base.string() + suffix);
}

void write_grid_csv(const Field& field, const std::vector<std::uint8_t>& mask,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << (mask.empty() ? "x,y,value\n" : "x,y,value,mask\n");
  const Grid2D& g = field.grid();
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      out << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ','
          << format_double(field(j, i));
      if (!mask.empty()) out << ',' << static_cast<int>(mask[j * g.nx + i]);
      out << '\n';
    }
  }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_artifact(const Artifact& a,
                                                  const std::filesystem::path& base,
                                                  const std::set<Format>& formats) {
  std::vector<std::filesystem::path> written;
  auto wants = [&](Format f) { return formats.count(f) > 0; };
  if (a.field) {
    if (wants(Format::GridBinary)) {
      const auto p = with_suffix(base, ".sgrid");
      if (a.mask.empty()) {
        write_grid_binary(p, *a.field);
      } else {
        write_grid_binary(p, MaskedField{*a.field, a.mask});
      }
      written.push_back(p);
    }
    if (wants(Format::Pgm)) {
      const auto p = with_suffix(base, ".pgm");
      write_pgm(*a.field, p, &a.mask);
      written.push_back(p);
    }
    if (wants(Format::Csv)) {
      const auto p = with_suffix(base, a.points ? "_grid.csv" : ".csv");
      write_grid_csv(*a.field, a.mask, p);
      written.push_back(p);
    }
  }
  if (wants(Format::Csv)) {
    if (a.points) {
      const auto p = with_suffix(base, ".csv");
      write_points_csv(p, *a.points);
      written.push_back(p);
    }
    if (!a.trace.empty()) {
      const auto p = with_suffix(base, "_trace.csv");
      write_trace_csv(p, a.trace);
      written.push_back(p);
    }
    for (const auto& s : a.series) {
      const auto p = with_suffix(base, s.suffix + ".csv");
      write_path_csv(p, s.times, s.values);
      written.push_back(p);
    }
  }
  return written;
}

}  // namespace spatialgen::cli
