#pragma once

#include <iosfwd>

namespace mwave::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one subcommand: profile, components, cornu, visibility or oracle.
/// Data goes to --out (default stdout); diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mwave::cli
