#pragma once

#include <ostream>

namespace monorun::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kDomain = 3;
inline constexpr int kCapExceeded = 4;
inline constexpr int kInvariantViolation = 5;
inline constexpr int kIo = 6;
}  // namespace exit_code

/// Entry point of the `monorun` tool. Results go to `out` unless --out is
/// given; diagnostics and warnings go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace monorun::cli
