#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hibound/error.hpp"

namespace hibound::tools {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerateBound = 3;
inline constexpr int kExitBadInput = 4;
inline constexpr int kExitCorrupt = 5;
inline constexpr int kExitIo = 6;

int exit_code_for(ErrorCode code);

/// Runs the `hibound` command line; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hibound::tools
