#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsshmm::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;

// Runs one command line (args[0] is the program name). Everything the
// command prints goes to out/err; nothing touches std::cout directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsshmm::cli
