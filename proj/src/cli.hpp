#pragma once

#include <ostream>

namespace gxr::cli {

// Exit codes of the command-line tool.
enum Exit : int {
    ok = 0,
    negative = 1,  // inconsistent graph, no repair, or a "no" decision
    usage = 2,
    load = 3,
    budget = 4,
    unsupported = 5,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gxr::cli
