#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sbls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitReproMismatch = 4;

/// Runs the command line (args excludes the program name). JSON results go
/// to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbls::cli
