#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selrules::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line `args` (args[0] is the program name). Data files
/// go where --output points or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace selrules::cli
