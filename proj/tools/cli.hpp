#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace residueseq::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInvalid = 2;

// Runs the command line (without the program name). Output goes to out,
// diagnostics to err; the return value is the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace residueseq::cli
