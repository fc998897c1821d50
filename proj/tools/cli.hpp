#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asymtree::cli {

// Runs one command line (without the program name). Returns the process exit
// status: 0 success, 1 domain failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace asymtree::cli
