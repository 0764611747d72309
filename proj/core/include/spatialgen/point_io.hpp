#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "spatialgen/pointproc.hpp"

namespace spatialgen {

/// Header `x,y` or `x,y,mark`, one point per row, 17 significant digits.
void write_points_csv(std::ostream& out, const PointPattern& pattern);
void write_points_csv(const std::filesystem::path& path, const PointPattern& pattern);

/// Reads points (and marks when the header has a mark column). The window is
/// left at its default.
PointPattern read_points_csv(std::istream& in);
PointPattern read_points_csv(const std::filesystem::path& path);

struct TraceRow {
  std::size_t step;
  std::size_t n;
  std::size_t s;
};

/// Header `step,n,s`.
void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRow> rows);

/// Header `t,x`.
void write_path_csv(const std::filesystem::path& path, std::span<const double> times,
                    std::span<const double> values);
void read_path_csv(const std::filesystem::path& path, std::vector<double>& times,
                   std::vector<double>& values);

/// "%.17g" formatting shared by every text writer.
std::string format_double(double v);

}  // namespace spatialgen
