#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperkp {

// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). The JSON report goes to
// --out when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperkp
