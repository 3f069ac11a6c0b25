#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace klein {

enum ExitCode : int {
    exit_ok = 0,
    exit_property_failure = 1,
    exit_invalid_input = 2,
    exit_io_failure = 3,
};

//! Command-line entry point; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace klein
