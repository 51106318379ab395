#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ebbi::cli {

// Runs one scenario. `args` excludes the program name. Returns the exit status:
// 0 on success (including reported violations), 1 for invalid parameters,
// 2 for command-line syntax errors, 3 when the output cannot be written.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebbi::cli
