// Command-line front end shared by the `fracmoment` executable and tests.
#pragma once

#include <string>
#include <vector>

namespace fracmoment {

enum ExitCode : int { kExitPass = 0, kExitToleranceFail = 1, kExitUsage = 2, kExitIo = 3 };

/// Parses argv (argv[0] is the program name) and runs one subcommand.
int run_cli(const std::vector<std::string>& args);

}  // namespace fracmoment
