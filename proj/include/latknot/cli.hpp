#pragma once

#include <ostream>

namespace latknot::cli {

enum ExitCode { kSuccess = 0, kDomainError = 1, kParseError = 2, kIndeterminate = 3 };

/// Runs one `latknot` invocation; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latknot::cli
