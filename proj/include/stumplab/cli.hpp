#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stumplab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailure = 1;
inline constexpr int kExitUsage = 2;

// The dispatcher behind the stumplab binary, split out so tests can drive it
// with argument vectors and capture streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stumplab
