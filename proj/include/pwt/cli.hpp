#ifndef PWT_CLI_HPP
#define PWT_CLI_HPP

#include <iosfwd>

namespace pwt {

// Full command-line front end, callable in-process for tests. Returns the
// exit code: 0 on success, 1 on usage or input problems, 2 on numerical
// failures propagated from the computation modules.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pwt

#endif
