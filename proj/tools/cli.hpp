#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbsim::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kConfigError = 3,
  kUnstable = 4,
  kOptimizationFailed = 5,
};

// Environment variable that overrides the default output directory.
inline constexpr const char* kOutputDirEnv = "RBSIM_OUTPUT_DIR";

// Entry point behind the rbsim executable; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rbsim::cli
