#pragma once

#include <string>
#include <vector>

namespace spatialgen::cli {

/// Runs the tool; args exclude the program name. Returns the process exit
/// code: 0 success, 1 generator or I/O failure, 2 usage error.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace spatialgen::cli
