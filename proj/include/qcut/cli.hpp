#pragma once

#include <iosfwd>

namespace qcut {

// Exit codes: 0 success or pass, 1 verification failure, 2 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace qcut
