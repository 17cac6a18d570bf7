#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seqlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

/// Runs the command line (args[0] is the program name). Normal output goes
/// to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seqlab::cli
