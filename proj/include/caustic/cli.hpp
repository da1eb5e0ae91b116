#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace caustic {

// Runs one subcommand (verify, base-points, mdeg, sample, planar, family).
// Returns 0 on success, 1 on a mathematical failure, 2 on an input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace caustic
