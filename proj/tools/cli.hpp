#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace macroq::cli {

inline constexpr const char* tool_version = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_computation = 1,
    exit_input = 2,
};

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace macroq::cli
