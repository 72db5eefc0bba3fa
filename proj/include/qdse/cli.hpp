#pragma once

#include <iosfwd>

namespace qdse {

/// Runs the command-line tool against the given streams and returns the
/// process exit code: 0 on success, 1 for configuration and usage errors,
/// 2 for domain and output errors.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qdse
