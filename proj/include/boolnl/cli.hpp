#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace boolnl::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDiffFailed = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "BOOLNL_OUT_DIR";

/// Entry point of the `boolnl` tool; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace boolnl::cli
