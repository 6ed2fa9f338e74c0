#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fcpool::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidationFailed = 2;

/// Entry point of the fcpool tool. args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace fcpool::cli
