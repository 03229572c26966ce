#pragma once

#include <iosfwd>

namespace agilepilot {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,      // unexpected failure (I/O, bug)
    kExitConfig = 2,        // usage, parse or validation error; nothing simulated
    kExitAborted = 3,       // a simulation ended early (envelope, divergence, ...)
    kExitPartialSweep = 4,  // at least one sweep cell did not complete
};

/// Entry point of the `agilepilot` tool: subcommands run, compare, sweep and
/// validate. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace agilepilot
