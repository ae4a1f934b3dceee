#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyreal {

// Full command-line driver. args excludes the program name. Returns the
// process exit code: 0 success, 2 refusal (bad input, dimension-0 Wythoff
// space, family mismatch), 1 internal invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyreal
