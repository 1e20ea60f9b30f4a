#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bagins::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInputError = 2,
    kNumericalError = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Results go to `out` (unless --out is given); diagnostics
/// and, without --out, the run manifest go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bagins::cli
