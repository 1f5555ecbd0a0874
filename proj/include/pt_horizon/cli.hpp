#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pt_horizon::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  // outside/boundary verdict, failed checks
inline constexpr int kExitError = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pt_horizon::cli
