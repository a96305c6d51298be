#pragma once
#include <ostream>
#include <string>
#include <vector>

namespace occ::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnresolved = 3;

// Runs one command line (args excludes the program name); artifacts go to out or --out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Top-level help followed by the help of every subcommand.
std::string help_text();

}  // namespace occ::cli
