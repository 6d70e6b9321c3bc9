#pragma once

#include <iosfwd>

namespace jacobi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitExcludedPoint = 4;

/// Entry point of the jacobi-phase command line. Data goes to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jacobi::cli
