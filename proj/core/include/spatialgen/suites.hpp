#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spatialgen/validate.hpp"

namespace spatialgen {

/// Names accepted by run_suite, plus "all".
std::vector<std::string> suite_names();

/// Quick statistical checks for one generator family; seconds, not minutes.
/// Unknown names throw InvalidParameter.
std::vector<MomentReport> run_suite(const std::string& name, std::uint64_t seed);

}  // namespace spatialgen
