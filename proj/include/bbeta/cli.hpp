#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bbeta::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kDomainError = 3,
  kNonConvergence = 4,
};

/// Entry point of the `bbeta` binary.
int run(int argc, char** argv);

/// Same, with explicit arguments (excluding the program name) and streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbeta::cli
