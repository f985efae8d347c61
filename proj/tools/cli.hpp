#ifndef TRIPENCIL_TOOLS_CLI_HPP
#define TRIPENCIL_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace tripencil::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int usage_or_io = 1;      // I/O, schema or usage error
inline constexpr int precondition = 2;     // a mathematical hypothesis failed
inline constexpr int verify_failed = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tripencil::cli

#endif
