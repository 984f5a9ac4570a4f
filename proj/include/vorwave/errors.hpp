#pragma once

#include <stdexcept>
#include <string>

namespace vorwave {

/// Input outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Configuration file / override problems. The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failures of the numerical machinery: stagnation, divergence, missing roots.
/// The continuation driver catches these to trigger step halving; the CLI maps
/// them to exit code 3.
struct SolverError : std::runtime_error {
    enum class Kind {
        laminar_stagnation,
        stagnation_in_iterate,
        stagnation_query,
        newton_diverged,
        no_bifurcation,
        branch_start_failed,
        outside_fluid_domain,
    };
    Kind kind;
    SolverError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

} // namespace vorwave
