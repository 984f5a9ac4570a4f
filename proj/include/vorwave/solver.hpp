#pragma once

#include "vorwave/grid.hpp"
#include "vorwave/laminar.hpp"
#include "vorwave/vorticity.hpp"

#include <string>
#include <vector>

namespace vorwave {

/// A converged height field h(q,p) on the fixed rectangle, with the Bernoulli
/// constant Q of the hodograph surface condition.
struct WaveSolution {
    WaveParameters params;
    HodographGrid grid;
    VorticitySpec gamma;
    GridField h;
    double Q = 0.0;
    double amplitude = 0.0; // (h(0,0) - h(pi,0)) / 2 at the surface

    double surface(int i) const { return h.at(i, grid.np); }
};

struct NewtonReport {
    int iterations = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
};

/// Pointwise residual of the quasilinear problem: interior rows carry
///   (1+h_q^2) h_pp - 2 h_p h_q h_pq + h_p^2 h_qq + gamma(-p) h_p^3,
/// the surface row carries 1 + h_q^2 + (2 g h - Q) h_p^2 with second-order
/// one-sided h_p, and the bed row is zero (Dirichlet).
/// Preconditions: bottom row exactly zero, field even in q; discrete h_p > 0
/// (otherwise SolverError{stagnation_in_iterate}).
GridField residual_field(const GridField& h, double Q, const VorticitySpec& gamma,
                         const WaveParameters& params);

/// Same residual evaluated in extended precision. The double-precision stencil
/// arithmetic has a noise floor of roughly ulp(h)/dp^2 (a few 1e-12 on the
/// default grid), so tolerances below 5e-12 switch the Newton iteration and
/// the validator to this path.
GridField residual_field_precise(const GridField& h, double Q, const VorticitySpec& gamma,
                                 const WaveParameters& params);

/// Amplitude-constrained Newton iteration on the half-period unknowns plus Q.
/// Converges when the max-norm of all residual rows (including the amplitude
/// constraint) drops below params.tol.
WaveSolution newton_solve(const GridField& seed, double Q_seed, double a_target,
                          const VorticitySpec& gamma, const WaveParameters& params,
                          NewtonReport* report = nullptr);

struct BranchOptions {
    double a_max_rel = 0.01;   // target amplitude in units of the laminar depth
    double delta_a_rel = 0.0025;
    double lambda_lo = 0.05;
    double lambda_hi = 2.0;
    int k = 1;
};

struct BranchPoint {
    double a = 0.0;
    WaveSolution sol;
    NewtonReport newton;
};

struct BranchState {
    BifurcationPoint bifurcation;
    std::vector<BranchPoint> points; // amplitudes strictly increasing, [0] is laminar
    double final_step = 0.0;
    int halvings = 0;
};

/// Continue the branch from the laminar flow at the bifurcation point up to
/// a_max_rel * depth, halving the amplitude step on failure (floor: initial
/// step / 64). Throws SolverError{branch_start_failed} when not even the first
/// nontrivial amplitude converges.
BranchState continue_branch(const VorticitySpec& gamma, const WaveParameters& params,
                            const BranchOptions& opts);

/// Named invariant violations; empty result means the solution is valid.
std::vector<std::string> validate_solution(const WaveSolution& sol);

/// Interpolate a coarse solution onto a finer grid as a Newton seed.
GridField refine_seed(const WaveSolution& coarse, const HodographGrid& fine);

/// Test support: worst absolute difference between the assembled Jacobian and
/// a central-difference Jacobian of the residual vector at (h, Q), normalized
/// by the largest finite-difference entry. Also covers entries the assembly
/// believes are zero.
double jacobian_fd_error(const GridField& h, double Q, const VorticitySpec& gamma,
                         const WaveParameters& params);

} // namespace vorwave
