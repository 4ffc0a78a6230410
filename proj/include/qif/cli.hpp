#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qif/error.hpp"

namespace qif::cli {

enum ExitCode : int { kOk = 0, kDomain = 1, kUsage = 2, kBudget = 3 };

int exit_code_for(ErrorCode code);

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qif::cli
