#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twoproj {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 1,        // validation, parse or usage errors
    kExitNumerical = 2,      // numerical failure, or a failed verification
    kExitIndeterminate = 3,  // the verdict needs measure information the model lacks
};

/// Runs the command line; argv[0] is the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twoproj
