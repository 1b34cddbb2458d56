// Command-line front end.  Exit codes: 0 success or pass, 1 a check failed,
// 2 refused by a cap, 3 input error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semiclones::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace semiclones::cli
