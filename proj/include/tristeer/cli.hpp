#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tristeer::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitThreshold = 4;

/// Runs one subcommand (analyze, threshold, tables, validate). Reports go to
/// `out`, diagnostics to `err`. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tristeer::cli
