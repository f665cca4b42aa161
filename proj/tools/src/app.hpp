#pragma once

#include <iosfwd>

namespace charvar::cli {

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace charvar::cli
