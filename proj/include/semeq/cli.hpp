#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace semeq {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation failed or an input was rejected
inline constexpr int kExitUsage = 2;

// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semeq
