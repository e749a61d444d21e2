#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qdisk {

inline constexpr const char* kToolVersion = "qdisk 0.1.0";

enum ExitCode : int { kExitPass = 0, kExitVerifyFailure = 1, kExitConfigError = 2, kExitNumericalFailure = 3 };

/// Entry point of the command-line tool. args excludes the program name.
/// Results go to --out when given, else to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdisk
