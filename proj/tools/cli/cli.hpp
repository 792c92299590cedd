#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace proofread::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Runs one command line (without the program name). Tables go to the output
/// file when -o is given, otherwise to `out`; the one-line summary goes to
/// `out` when a file was written and to `err` otherwise.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace proofread::cli
