#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knapga {

/// Entry point behind the `knapsack-ga` executable. `args` excludes the
/// program name. Returns the process exit code; regular output goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace knapga
