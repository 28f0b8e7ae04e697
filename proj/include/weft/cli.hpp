#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weft::cli {

/// Exit codes of the command line tool.
enum ExitCode : int {
    ok = 0,
    io_error = 1,        ///< argument parsing, unreadable/malformed files
    precondition = 2,    ///< grid mismatch, off-lattice index, invalid grid
    orthogonal = 3,      ///< overlap too small for a division by <phi|psi>
    verify_failed = 4,   ///< verification suite reported failures
};

/// Runs one wigner-weft command. args[0] is the program name.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace weft::cli
