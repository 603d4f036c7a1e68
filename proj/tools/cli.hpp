#pragma once

#include <ostream>

namespace vbent::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kSearchFailed = 4,
  kInvariant = 5,
};

// Subcommands: rumer, state, measure, solve, spectrum, curve.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vbent::cli
