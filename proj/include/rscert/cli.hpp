#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rscert::cli {

enum ExitCode : int {
    kPass = 0,
    kFail = 1,
    kUsage = 2,
    kInconclusive = 3,
};

/// Environment variable holding the default precision mode ("double" or "extended").
inline constexpr const char* kPrecisionEnv = "RSCERT_PRECISION";

/// Parses `args` (without the program name), runs the subcommand and returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rscert::cli
