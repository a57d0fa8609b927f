#include <cstdio>
#include <string>
#include <vector>

#include "valfield/cli_core.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  valfield::CliResult r = valfield::run_cli(args);
  std::fputs(r.out.c_str(), stdout);
  return r.exit_code;
}
