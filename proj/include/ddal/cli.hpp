// Command-line front end. Exit codes: 0 for YES or success, 1 for NO or a
// failed check, 2 for usage, parse and precondition errors.
#pragma once

#include <iosfwd>

namespace ddal {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddal
