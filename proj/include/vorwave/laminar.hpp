#pragma once

#include "vorwave/grid.hpp"
#include "vorwave/vorticity.hpp"

#include <vector>

namespace vorwave {

/// A q-independent flow H(p) with H(p0) = 0 and shooting parameter
/// lambda = H'(p0) > 0. Sampled on the solver p-grid; the integration itself
/// runs on a grid refined by `refine`.
struct LaminarProfile {
    double lambda = 0.0;
    double p0 = 0.0;
    int np = 0;
    int refine = 8;
    std::vector<double> H;   // np+1 values, H[0] = 0
    std::vector<double> Hp;  // np+1 values, Hp[0] = lambda
    double Q = 0.0;          // 2 g H(0) + 1 / H'(0)^2
    double c = 0.0;          // 1 / lambda (Stokes condition at the bed)
    double depth() const { return H.back(); }
};

/// Integrate H'' = -gamma(-p) H'^3 from p0 to 0 by classic RK4.
/// Throws SolverError{laminar_stagnation} naming the failing p when
/// 1/lambda^2 + 2*int_{p0}^{p} gamma(-s) ds reaches zero inside the column.
LaminarProfile solve_laminar(const VorticitySpec& gamma, double p0, double lambda,
                             double g, int np, int refine = 8);

/// Residual of the linearized surface condition for the 2*pi/k periodic mode:
/// integrates m'' + 3 gamma(-p) H'^2 m' - k^2 H'^2 m = 0 with m(p0) = 0,
/// m'(p0) = 1 and returns (g m(0) H'(0)^3 - m'(0)) / m'(0), normalized so the
/// residual is monotone in lambda on stagnation-free brackets. A root marks a
/// bifurcation point.
double dispersion_residual(const VorticitySpec& gamma, double p0, double g, int k,
                           double lambda, int np, int refine = 8);

struct BifurcationPoint {
    double lambda = 0.0;
    LaminarProfile profile;
    std::vector<double> eigenfunction; // m at the solver p-nodes, m(0) = 1
};

/// Locate a sign change of dispersion_residual in [lambda_lo, lambda_hi] and
/// bisect it to |dlambda| < 1e-10. Throws SolverError{no_bifurcation} when the
/// bracket contains no root.
BifurcationPoint find_bifurcation(const VorticitySpec& gamma, double p0, double g, int k,
                                  double lambda_lo, double lambda_hi, int np, int refine = 8);

/// Newton seed h(q,p) = H(p) + eps * m(p) cos(q); crest-trough half-range eps.
GridField linear_seed(const BifurcationPoint& bif, double eps, const HodographGrid& grid);

} // namespace vorwave
