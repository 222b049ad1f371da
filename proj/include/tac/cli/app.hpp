#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;   // unknown flag, bad value, config invariant
inline constexpr int kExitData = 3;     // missing or malformed input file
inline constexpr int kExitNumeric = 4;  // non-finite training state

/// Runs one subcommand (`args` excludes the program name). Progress goes to
/// `out`; a failure writes a single diagnostic line to `err` and returns
/// the matching exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace tac::cli
