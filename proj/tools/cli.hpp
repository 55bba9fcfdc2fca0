#pragma once

namespace irlsunwrap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMalformed = 2;
inline constexpr int kExitDimension = 3;
inline constexpr int kExitBreakdown = 4;

int run(int argc, char** argv);

}  // namespace irlsunwrap::cli
