#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace summet {

// One CLI invocation; argv excludes the program name.
// Exit codes: 0 success, 1 domain failure, 2 input/usage error.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace summet
