#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace coxsaito::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIntegrity = 3;

/// Exit code for an exception escaping a run: configuration, parse and
/// validation errors map to 2, everything else to 3.
int exit_code_for(const std::exception& e);

/// Runs the command line `args` (without the program name).  Reports go to
/// `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coxsaito::cli
