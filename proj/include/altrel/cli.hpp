#pragma once

// Entry point shared by the altrel binary and the CLI tests. Takes the
// argument list without the program name; writes human output and the final
// run-log JSON line to `out`, diagnostics to `err`; returns the process exit
// code (0 ok, 1 generic, 2 degenerate instance, 3 retry cap, 4 budget).

#include <iosfwd>
#include <string>
#include <vector>

namespace altrel {

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace altrel
