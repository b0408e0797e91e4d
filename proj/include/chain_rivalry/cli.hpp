#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chain_rivalry/verify.hpp"

namespace chain_rivalry {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitCorner = 2,
    kExitVerifyFailed = 3,
};

struct CliHooks {
    /// Closed-form solver used by `verify`; tests swap in a faulty one.
    ClosedFormSolver closed_form = [](const ModelParams& p, Scenario sc) { return equilibrium(p, sc); };
};

/// Runs `chain-rivalry <args...>` (args exclude the program name) and returns
/// the exit code. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliHooks& hooks = {});

}  // namespace chain_rivalry
