#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace swctl {

/// Command-line entry point; args exclude the program name. Returns the
/// exit code: `check` gives 0 (controllable) or 1, other commands 0, and
/// any usage or input error 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swctl
