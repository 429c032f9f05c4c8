#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsc::cli {

enum ExitCode { kOk = 0, kFailed = 1, kUsage = 2, kCapExceeded = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsc::cli
