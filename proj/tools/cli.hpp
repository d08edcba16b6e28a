#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace essig::cli {

/// Runs the essig command line with `args` (program name excluded).
/// Returns the process exit code; diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace essig::cli
