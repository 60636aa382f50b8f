#pragma once

#include <string>
#include <vector>

namespace wop {

// Entry point behind the `wop` binary. Returns the process exit code:
// 0 success, 1 validation/solve failure, 2 usage error.
int cli(int argc, const char* const* argv);
int cli(const std::vector<std::string>& args);  // args without the program name

}  // namespace wop
