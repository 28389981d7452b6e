#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ballgreen::cli {

// Exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_suite_failure = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_evaluation = 3;

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Records go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated decimal literals; throws std::invalid_argument otherwise.
std::vector<double> parse_list(const std::string& text);

} // namespace ballgreen::cli
