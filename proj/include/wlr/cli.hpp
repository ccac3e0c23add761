#pragma once

#include <iosfwd>

namespace wlr::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;
inline constexpr int kIo = 4;

/// Runs the command line front end; all output goes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wlr::cli
