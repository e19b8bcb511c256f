#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freearr::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kUsageError = 2 };

/// Runs one command line (args excludes the program name). JSON goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freearr::cli
