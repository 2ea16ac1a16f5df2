#pragma once

#include <iosfwd>

namespace stitch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInternal = 3 };

// Runs one subcommand. Diagnostics go to `err`; scalar results to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stitch::cli
