#pragma once

#include <string>
#include <vector>

namespace mhdvac::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

// Runs one subcommand. Artifacts go to --out (or the config's output field).
// Errors are reported on stderr as one JSON object and, when possible, as error.json.
int run_cli(const std::vector<std::string>& args);

int run_cli(int argc, char** argv);

}  // namespace mhdvac::cli
