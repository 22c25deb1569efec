#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace heightlab::cli {

enum ExitCode : int { kOk = 0, kInvariantFailure = 1, kUsage = 2, kResource = 3 };

/// Runs the tool on args (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heightlab::cli
