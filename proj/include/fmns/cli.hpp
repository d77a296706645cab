#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fmns {

/// Exit codes of the command line tool.
enum ExitCode : int { kExitOk = 0, kExitStructural = 1, kExitAuditFailed = 2 };

/// Runs a subcommand (run, audit, continuation, refine, mms, euler-export).
/// `args` excludes the program name. The output directory is taken from
/// --out, then the FMNS_OUT_DIR environment variable, then output.dir.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fmns
