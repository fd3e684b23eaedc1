#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace privbeh::cli {

/// Dispatches one invocation (arguments without the program name).
/// Exit codes: 0 success / satisfied / all-pass, 1 not satisfied / any-fail /
/// oracle mismatch, 2 usage or model error. `in` feeds the interactive
/// simulator; all regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace privbeh::cli
