#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace subpoisson::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default `verify --out` directory.
inline constexpr const char* kOutDirEnv = "SUBPOISSON_OUT_DIR";

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subpoisson::cli
