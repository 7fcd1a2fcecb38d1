#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace grpd::cli {

/// Runs the `grpd` command line on `args` (without the program name).
/// Returns 0 on success, 1 on a domain failure, 2 on usage or parse errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grpd::cli
