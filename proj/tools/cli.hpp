#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tietz::cli {

enum ExitCode : int
{
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    numerical_warning = 3,
};

/// Runs one command. `args` excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace tietz::cli
