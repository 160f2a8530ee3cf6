#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumrank::cli {

enum ExitStatus : int {
    kSuccess = 0,
    kValidationError = 2,
    kBudgetError = 3,
};

/// Runs one CLI invocation. args excludes the program name. Reports go to
/// out (or to --out PATH), diagnostics to err. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sumrank::cli
