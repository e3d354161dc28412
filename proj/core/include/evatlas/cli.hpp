#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evatlas {

// Command-line driver: compile | query | stats | conflicts | validate |
// fixtures. `args` excludes the program name. Returns the process exit code:
// 0 when the command ran (non-executable query answers are data, not
// failures), 2 on input errors (unknown flags, unreadable files, malformed
// cards or configs).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace evatlas
