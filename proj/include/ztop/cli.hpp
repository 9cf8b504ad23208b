#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ztop::cli {

enum ExitCode : int { kIn = 0, kOut = 1, kUnknown = 2, kUsage = 3 };

/// Runs one command; `args` excludes the program name. Writes one JSON
/// document (or CSV with --csv) to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ztop::cli
