#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocspath {

// Exit codes used by the command line driver.
inline constexpr int exit_ok = 0;
inline constexpr int exit_unreachable = 1;  // also: empty language, no low arc
inline constexpr int exit_input_error = 2;
inline constexpr int exit_internal_error = 3;

// Runs one command line invocation.  `in` backs the "-" file argument.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace ocspath
