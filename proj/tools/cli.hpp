#ifndef GSTOWER_TOOLS_CLI_HPP
#define GSTOWER_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gstower::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace gstower::cli

#endif
