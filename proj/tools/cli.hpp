#pragma once

#include <iosfwd>

namespace qrns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the qrns binary and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qrns::cli
