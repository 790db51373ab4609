#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cgen::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kOverflow = 3;

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgen::cli
