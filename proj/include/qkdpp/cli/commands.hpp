#pragma once

#include <ostream>

namespace qkdpp::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kInfeasible = 3,
  kAbort = 4,
};

/// Entry point behind the qkdpp binary. Subcommands: optimize, simulate,
/// curve, bounds. Results go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qkdpp::cli
