#pragma once

#include "vorwave/config.hpp"
#include "vorwave/solver.hpp"

#include <string>

namespace vorwave {

/// Execute one CLI subcommand: laminar, bifurcate, solve, trace, verify,
/// plot or sweep. Writes artifacts plus an effective-config echo under
/// cfg.out. Returns the process exit code (0 ok, 4 verification failure);
/// configuration and solver errors propagate as exceptions.
int run_command(const std::string& command, const RunConfig& cfg);

/// Shared helper: continuation branch for a config (used by several commands).
BranchState solve_branch(const RunConfig& cfg);

} // namespace vorwave
