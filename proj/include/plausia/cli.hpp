#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plausia {

/// Exit-code contract shared by every subcommand:
///   0  all checks pass / theorem holds
///   1  violation or failure found
///   2  usage or parse error
///   3  not applicable (theorem hypotheses unmet)
constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNotApplicable = 3;

/// Runs one CLI invocation (argv without the program name) against the
/// given streams. The binary's main() is a thin wrapper; tests drive this
/// directly.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plausia
