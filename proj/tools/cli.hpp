#ifndef ROBUSTMATCH_TOOLS_CLI_HPP_
#define ROBUSTMATCH_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace robustmatch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInvariant = 2;

// `args` excludes the program name. Documents go to `out`, diagnostics to
// `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robustmatch::cli

#endif  // ROBUSTMATCH_TOOLS_CLI_HPP_
