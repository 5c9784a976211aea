#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/job_config.hpp"

namespace resolvent::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2 };

struct CommandResult {
    int status = exit_ok;
    std::string output;  ///< full file contents, LF line endings
};

CommandResult cmd_eval(const JobConfig& cfg);
CommandResult cmd_limit_study(const JobConfig& cfg);
CommandResult cmd_verify(const JobConfig& cfg);
CommandResult cmd_pole_scan(const JobConfig& cfg);

/// Entry point behind the `resolvent` binary. `args` excludes argv[0].
/// Output goes to --out when given, otherwise to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resolvent::cli
