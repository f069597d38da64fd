#ifndef POLYDISC_CLI_HPP
#define POLYDISC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace polydisc {

// Runs one CLI invocation.  args excludes the program name.
// Exit codes: 0 success, 1 malformed input, 2 residual above the
// tolerance or domain violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polydisc

#endif
