#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace peerscope::cli {

/// Exit codes: 0 success, 1 invalid input or failed stage, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peerscope::cli
