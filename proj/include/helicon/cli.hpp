#pragma once

#include <string>
#include <vector>

namespace helicon {

// Runs the command-line front end.  Exit status: 0 on success, 2 on usage
// errors, 3 on data or boundary errors.
int run_cli(const std::vector<std::string>& args);

}  // namespace helicon
