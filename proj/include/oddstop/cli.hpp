#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oddstop {

// Entry point shared by the binary and the test suite. Returns 0 on
// success, 1 on input or usage errors, 2 when a computed result fails an
// internal consistency check.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace oddstop
