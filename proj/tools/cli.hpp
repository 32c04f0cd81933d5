#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnc {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;

/// Runs one command line (without the program name). JSON lines go to out,
/// diagnostics to err. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnc
