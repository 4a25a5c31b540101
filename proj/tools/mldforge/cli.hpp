#pragma once

#include <ostream>

namespace mldforge::cli {

// Exit codes: 0 success, 2 input rejected, 1 internal error or budget.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mldforge::cli
