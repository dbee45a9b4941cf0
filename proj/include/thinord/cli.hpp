#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thinord {

// Runs one command-line invocation (argv without the program name). Results
// go to out as JSON or CSV, diagnostics to err. Returns 0 on success, 1 when
// a requested check or dominance claim fails, 2 on invalid input.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace thinord
