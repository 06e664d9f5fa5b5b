#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrsum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the `mrsum` tool. `args` excludes the program name.
// Returns 0 on success, 1 on usage errors and 2 on data/IO errors; errors
// are reported as a single line on `err`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace mrsum
