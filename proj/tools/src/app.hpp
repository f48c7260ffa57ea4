#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace otfs::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,     // bad flags or invalid input data
    kFit = 3,       // conditioning, unisolvency, tuning
    kIntegration = 4,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload for tests: args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace otfs::cli
