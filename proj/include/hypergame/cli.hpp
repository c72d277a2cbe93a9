#pragma once

#include <iosfwd>

namespace hypergame {

// Exit codes: 0 pass, 1 verification failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hypergame
