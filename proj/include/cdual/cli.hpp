#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cdual {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line; args excludes the program name. JSON goes to out,
/// diagnostics to err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdual
