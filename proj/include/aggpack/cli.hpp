#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aggpack::cli {

/// Dispatches one invocation (args without the program name).
/// Exit codes: 0 success / all checks passed, 1 validation error or failed
/// check, 2 enumeration budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace aggpack::cli
