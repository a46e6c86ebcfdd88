#pragma once

#include <ostream>

namespace vlstore {

/// Parses bench flags, runs the requested search (or shapes scenario) and
/// writes the report to `out`. Returns the process exit code: 0 success,
/// 2 invalid configuration, 3 storage capacity exhausted, 4 model/storage
/// incompatibility, 1 unexpected error.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace vlstore
