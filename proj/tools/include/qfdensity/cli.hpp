#pragma once

#include <iosfwd>

namespace qfd::cli {

/// Runs one `qfd` subcommand.  Returns 0 on success, 2 on a usage error,
/// 3 on an internal invariant violation and 1 on anything else.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfd::cli
