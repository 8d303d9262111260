// cli.hpp -- the orbitscope command line, callable in-process.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitscope::cli {

enum ExitCode : int
{
    kSuccess = 0,
    kValidationFailure = 1,
    kIoFailure = 2,
};

/// Runs one invocation. `args` excludes the program name. Subcommands:
/// orbits, stats, classify, simulate, render.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from ORBITSCOPE_THREADS; hardware concurrency when unset.
unsigned thread_limit();

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

} // namespace orbitscope::cli
