#pragma once

#include <string>
#include <vector>

namespace qbmor::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kNotConverged = 4;

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line `args` (without the program name) and returns the
/// exit code. Messages go to stdout/stderr.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace qbmor::cli
