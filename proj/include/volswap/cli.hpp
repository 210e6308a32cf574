#pragma once

// Command-line front end: price, oracle mc|pde, compare, verify.

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace volswap::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_numerical = 1,
  exit_usage = 2,
  exit_diverging = 3,
  exit_compare_failed = 4,
};

/// Runs the tool on argv[1..argc). Documents go to `out` unless --output is
/// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Flat key=value file. Blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_config(const std::string& path);

/// Removes --config PATH from args and inserts --key=value for every key that
/// is not given explicitly, right after the subcommand tokens.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double x);

}  // namespace volswap::cli
