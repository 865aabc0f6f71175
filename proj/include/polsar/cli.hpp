#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polsar::cli {

/// Runs one `polsar <subcommand> [flags]` invocation. args[0] is the program name.
/// Returns the process exit status: 0 ok, 1 runtime/data error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace polsar::cli
