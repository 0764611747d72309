#include "spatialgen/point_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "spatialgen/errors.hpp"

namespace spatialgen {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return in;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      throw Error("csv: cannot parse '" + cell + "'");
    }
  }
  if (out.size() != expected) throw Error("csv: expected " + std::to_string(expected) + " columns");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_points_csv(std::ostream& out, const PointPattern& pattern) {
  const bool marked = pattern.has_marks();
  if (marked && pattern.marks.size() != pattern.points.size()) {
    throw InvalidParameter("write_points_csv: marks and points differ in length");
  }
  out << (marked ? "x,y,mark\n" : "x,y\n");
  for (std::size_t k = 0; k < pattern.points.size(); ++k) {
    out << format_double(pattern.points[k][0]) << ',' << format_double(pattern.points[k][1]);
    if (marked) out << ',' << format_double(pattern.marks[k]);
    out << '\n';
  }
  if (!out) throw Error("csv: write failed");
}

void write_points_csv(const std::filesystem::path& path, const PointPattern& pattern) {
  auto out = open_out(path);
  write_points_csv(out, pattern);
}

PointPattern read_points_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error("csv: missing header");
  bool marked;
  if (header == "x,y") {
    marked = false;
  } else if (header == "x,y,mark") {
    marked = true;
  } else {
    throw Error("csv: unexpected header '" + header + "'");
  }
  PointPattern out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = parse_row(line, marked ? 3 : 2);
    out.points.push_back({row[0], row[1]});
    if (marked) out.marks.push_back(row[2]);
  }
  return out;
}

PointPattern read_points_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_points_csv(in);
}

void write_trace_csv(const std::filesystem::path& path, std::span<const TraceRow> rows) {
  auto out = open_out(path);
  out << "step,n,s\n";
  for (const auto& r : rows) out << r.step << ',' << r.n << ',' << r.s << '\n';
  if (!out) throw Error("csv: write failed");
}

void write_path_csv(const std::filesystem::path& path, std::span<const double> times,
                    std::span<const double> values) {
  if (times.size() != values.size()) throw InvalidParameter("write_path_csv: length mismatch");
  auto out = open_out(path);
  out << "t,x\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << format_double(times[k]) << ',' << format_double(values[k]) << '\n';
  }
  if (!out) throw Error("csv: write failed");
}

void read_path_csv(const std::filesystem::path& path, std::vector<double>& times,
                   std::vector<double>& values) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "t,x") throw Error("csv: expected header 't,x'");
  times.clear();
  values.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto row = parse_row(line, 2);
    times.push_back(row[0]);
    values.push_back(row[1]);
  }
}

}  // namespace spatialgen
