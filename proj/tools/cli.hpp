#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace medianforge::cli {

// Exit codes: 0 success, 1 negative verdict (report still written), 2 input or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medianforge::cli
