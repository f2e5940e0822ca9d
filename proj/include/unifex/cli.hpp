#ifndef UNIFEX_CLI_HPP
#define UNIFEX_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace unifex::cli {

// Runs one subcommand of {eval, coeffs, sweep, rates, figures}.
// Exit codes: 0 success, 1 precondition violation, 2 numerical failure,
// 64 usage error (unknown flag or malformed arguments).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unifex::cli

#endif
