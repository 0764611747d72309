#include "cli/cli.hpp"

int main(int argc, char** argv) { return spatialgen::cli::run(argc, argv); }
