#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ssf::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_ambiguous = 3;
inline constexpr int exit_depth_overflow = 4;

/// Runs one command line (args excludes the program name). Artifacts go to
/// `out` unless a path option redirects them; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ssf::cli
