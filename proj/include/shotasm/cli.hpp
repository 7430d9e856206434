#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shotasm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidFlags = 2;
inline constexpr int kDataError = 3;
inline constexpr int kInfeasible = 4;

// Subcommands: optimize, learn, bench, eval. Data goes to --out files or
// `out`; diagnostics go to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shotasm::cli
