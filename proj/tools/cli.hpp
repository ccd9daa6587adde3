#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "giep/error.hpp"

namespace giep::cli {

// 0 ok, 1 bad input, 2 infeasible, 3 numerical failure, 4 verification failed.
int exit_code(ErrorKind kind) noexcept;

/// Runs the tool with args (argv without the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace giep::cli
