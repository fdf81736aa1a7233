#pragma once

#include <iosfwd>

namespace dcq::cli {

/// Exit codes: 0 pass, 1 check failed, 2 usage, parse or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dcq::cli
