#pragma once

#include <ostream>

namespace emmatch::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kIoError = 2,
    kDegenerateInput = 3,
    kNotConverged = 4,
    kLocalBalance = 5,
};

/// Entry point of the `emmatch` tool, split out so tests can drive it in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emmatch::cli
