#pragma once

#include <iosfwd>
#include <string>

#include "qnls/io.hpp"

namespace qnls {

// Each command validates the config, writes its files under config.out and a
// short report to `out`, and returns an ExitCode. Errors propagate as
// exceptions; run_command maps them to exit codes.
int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_branch(const RunConfig& config, std::ostream& out);
int cmd_normalized(const RunConfig& config, std::ostream& out);
int cmd_profiles(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_figure_k(const RunConfig& config, std::ostream& out);

/// Dispatches by subcommand name. ConfigError and DomainError -> 2,
/// NoBracketError -> 3, NumericError -> 4.
int run_command(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qnls
