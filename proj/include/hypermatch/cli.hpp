#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypermatch::cli {

/// Runs one CLI invocation; returns the process exit code.
/// 0 = success and all requested checks passed, 1 = a requested check
/// failed, 2 = usage error, 3..9 = module error classes.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hypermatch::cli
