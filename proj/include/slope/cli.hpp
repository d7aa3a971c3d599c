#pragma once

#include <ostream>

#include "slope/error.hpp"

namespace slope {

/// Exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 I/O error.
int exit_code_for(ErrorKind kind);

/// Entry point for the `slopesurf` tool. Data goes to `out` (or to files
/// named with -o), diagnostics and summaries to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slope
