#pragma once

#include <ostream>

namespace thetacell {

// Exit codes: 0 success, 1 verification failure, 2 budget exhausted,
// 3 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thetacell
