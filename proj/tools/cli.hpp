#pragma once

#include <iosfwd>

namespace qwalk::cli {

/// Runs one command. Exit codes: 0 success, 1 analysis error (JSON on `err`), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
