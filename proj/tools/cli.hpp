#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ukit::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kUsageError = 2,
};

// Runs the ukit command line with args (excluding the program name), writing
// results to out and diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ukit::cli
