#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetkernel {

/// Runs the command line `args` (without the program name). Exit codes: 0 on
/// success, 1 for domain errors (a JSON error object is written to `out`),
/// 2 for usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetkernel
