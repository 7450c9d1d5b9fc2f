#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nls::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 2,
    kDataError = 3,
    kNumericInstability = 4,
};

/// Entry point shared by the `nls` binary and the tests. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nls::cli
