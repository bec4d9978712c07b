#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mew::cli {

/// Exit codes: 0 success, 1 bad input, 2 a configured size cap was hit.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitResource = 2;

/// args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace mew::cli
