#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ifacemetrics::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFindings = 1;
inline constexpr int kExitError = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Up to `limit` names closest to `query` by edit distance on either the
/// qualified or the simple name.
std::vector<std::string> nearest_names(const std::string& query, const std::vector<std::string>& candidates,
                                       std::size_t limit = 3);

}  // namespace ifacemetrics::cli
