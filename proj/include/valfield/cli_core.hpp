#pragma once

#include <string>
#include <vector>

#include "valfield/construction.hpp"

namespace valfield {

struct CliResult {
  int exit_code = 0;
  std::string out;
};

// Exit codes: 0 success / verdict holds, 1 refutation or failure witness,
// 2 usage or domain error, 3 undecidable at the given precision.
CliResult run_cli(const std::vector<std::string>& args);

// Flat key = value manifest (p, n, m, J, M, q, sprec, modification,
// generators); '#' starts a comment, q is "auto" or progressions joined with
// '|' of comma-separated primes.
ConstructionParams manifest_from_string(const std::string& text);
ConstructionParams load_manifest(const std::string& path);

}  // namespace valfield
