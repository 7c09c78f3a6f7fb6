#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace forcing::cli {

/// Runs one invocation (argv without the program name). Exit status: 0 on
/// success or all checks passing, 1 on a failed, infeasible or not-found
/// result or a violated precondition, 2 on a usage error.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace forcing::cli
