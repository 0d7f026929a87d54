#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simgroup::cli {

// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kInputError = 1, kContractError = 2, kCapExceeded = 3 };

// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simgroup::cli
