// cli.hpp: command-line front end

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohtrap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;        // argument or domain error
inline constexpr int kExitNumerical = 3;    // non-convergence

/// Runs one command. args excludes the program name. Results go to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cohtrap::cli
