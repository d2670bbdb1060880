#pragma once

#include <ostream>

namespace locirr {

enum ExitCode : int {
    exit_ok = 0,
    exit_false = 1,
    exit_input = 2,
    exit_budget = 3,
};

// Entry point of the command-line tool. Machine output goes to --out when
// given and to `out` otherwise; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace locirr
