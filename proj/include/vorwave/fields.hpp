#pragma once

#include "vorwave/interpolant.hpp"
#include "vorwave/solver.hpp"

#include <memory>
#include <vector>

namespace vorwave {

/// Physical-frame quantities of a wave: mean depth d (so the mean water level
/// is y = 0), wave speed c fixed by the bed Stokes condition, the physical
/// Bernoulli constant C = Q - 2 g d, and the sampled surface profile.
struct PhysicalFrame {
    double d = 0.0;
    double c = 0.0;
    double C = 0.0;
    std::vector<double> eta;    // eta_i = h(q_i, 0) - d
    std::vector<double> eta_x;  // periodic central differences
    std::vector<double> eta_xx;
    double max_abs_eta_x = 0.0;
};

PhysicalFrame derive_frame(const WaveSolution& sol);

struct Velocity {
    double u = 0.0;
    double v = 0.0;
};

/// Closed-form surface derivatives evaluated from (eta, eta', eta''):
///   psi_y^2   = (C - 2 g eta) / (1 + eta'^2)
///   Dx psi_y^2, psi_xy, psi_yy per the corresponding surface identities.
struct SurfaceDerivs {
    double psi_y2 = 0.0;
    double Dx_psi_y2 = 0.0;
    double psi_xy = 0.0;
    double psi_yy = 0.0;
};

/// Maps a solution back to physical space through one C1 interpolant of h, so
/// velocity queries, the hodograph inverse and trajectory integration all see
/// the same field.
class FieldSampler {
public:
    FieldSampler(const WaveSolution& sol, const PhysicalFrame& frame);

    const PhysicalFrame& frame() const { return frame_; }
    const HodographGrid& grid() const { return interp_.grid(); }
    const HodographInterpolant& interpolant() const { return interp_; }
    double gamma0() const { return gamma0_; }
    double g() const { return g_; }

    /// u = c - 1/h_p, v = -h_q/h_p at hodograph coordinates (q, p).
    Velocity velocity_hodograph(double q, double p) const;

    /// Surface height y = eta(x) seen by the interpolant.
    double surface_height(double x) const;

    /// Invert h(q, p) = y + d for p at q = x; throws outside the fluid domain.
    double locate_p(double x, double y) const;

    Velocity velocity_physical(double x, double y) const;
    double psi(double x, double y) const { return -locate_p(x, y); }

private:
    HodographInterpolant interp_;
    PhysicalFrame frame_;
    double gamma0_ = 0.0;
    double g_ = 0.0;
    double p0_ = 0.0;
};

/// Evaluate the four closed-form surface expressions at x (periodic linear
/// interpolation of the sampled eta derivatives between nodes).
SurfaceDerivs surface_formulas(const PhysicalFrame& frame, double gamma0, double g, double x);

/// Same expressions from pointwise (eta, eta', eta'') values.
SurfaceDerivs surface_formulas_values(double C, double gamma0, double g, double eta,
                                      double eta_x, double eta_xx);

} // namespace vorwave
