#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polar::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kConfusablesEnv = "POLAR_CONFUSABLES";

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polar::cli
