#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace docforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNothingExtracted = 2,
  kExitDiffMismatch = 3,
};

// Entry point of the docforge executable. Machine-readable results go to
// files or `out`; diagnostics go through docforge::log.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace docforge
