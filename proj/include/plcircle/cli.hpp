#pragma once

// Command-line front end. Exit status: 0 success, 1 a negative mathematical
// finding (counterexample, empty intersection, exhausted search, failed
// hypothesis, inconclusive rotation data), 2 usage, parse or I/O errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace plcircle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plcircle::cli
