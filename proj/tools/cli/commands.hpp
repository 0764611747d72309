#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cli/output.hpp"
#include "spatialgen/rng.hpp"

namespace spatialgen::cli {

/// Flat key=value generator parameters, typed by kind.
struct Params {
  std::map<std::string, double> reals;
  std::map<std::string, std::uint64_t> ints;
  std::map<std::string, std::string> strings;

  double real(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
};

using Generator = std::function<Artifact(RngStream&)>;

struct Command {
  std::string name;
  std::string help;
  Params defaults;
  std::set<Format> allowed;
  std::set<Format> default_formats;
  /// Builds a per-run generator once; called again for each realization.
  std::function<Generator(const Params&)> prepare;
};

const std::vector<Command>& commands();

std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace spatialgen::cli
