#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singmod::cli {

/// Runs one CLI invocation. Exit codes: 0 success / verified, 1 failed
/// verification, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singmod::cli
