#pragma once

#include <iosfwd>

namespace flipin::tools {

/// Entry point of the flipin command-line tool. Returns the process exit
/// code: 0 on success, 1 for invalid input or failed computations, and
/// CLI11's code for usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flipin::tools
