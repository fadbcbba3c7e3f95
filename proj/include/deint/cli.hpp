#pragma once

namespace deint {

/// Parses argv and runs one subcommand.  Exit codes: 0 success, 1 usage,
/// 2 I/O failure, 3 internal error.
int run_cli(int argc, const char* const* argv);

}  // namespace deint
