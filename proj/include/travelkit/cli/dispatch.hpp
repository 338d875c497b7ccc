#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace travelkit::cli {

// Exit codes: 0 success, 1 failure (bad input, invalid config, failed
// checks), 2 usage error (unknown command or flag).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// argv[0] is the program name.
int dispatch(std::span<char*> argv);

}  // namespace travelkit::cli
