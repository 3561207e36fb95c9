#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace supercrit {

/// Run the command-line front end. `args` excludes the program name.
/// Returns 0 on success, 2 on usage errors, 1 on numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace supercrit
