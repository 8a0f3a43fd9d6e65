#pragma once

#include <iosfwd>

namespace stresskit::cli {

/// Exit codes: 0 ok, 2 input error, 3 numerical failure, 4 construction failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitConstruction = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stresskit::cli
