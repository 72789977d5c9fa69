#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kproj::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitCheckFailure = 1,
    kExitUsage = 2,
    kExitIo = 3,
    kExitSingularShift = 4,
    kExitNotJProjection = 5,
};

/// Entry point of the `kproj` tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace kproj::cli
