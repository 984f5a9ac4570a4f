#pragma once

#include "vorwave/fields.hpp"

#include <vector>

namespace vorwave {

/// One streamline y = sigma(x), sampled at the q-nodes.
struct Streamline {
    double p = 0.0;
    std::vector<double> x;
    std::vector<double> sigma;  // h(q,p) - d
    std::vector<double> slope;  // h_q(q,p)
    double max_steepness = 0.0;
};

Streamline streamline(const FieldSampler& fs, double p);

struct DriftResult {
    double tau = 0.0;   // steady-frame traversal time of one period
    double drift = 0.0; // D = c tau - 2 pi; 0 iff the physical orbit closes
};

/// tau = 2 * int_0^pi h_p(q,p) dq evaluated by the periodic trapezoid rule.
DriftResult traversal_and_drift(const FieldSampler& fs, double p);

/// Particle path in physical coordinates, integrated in the steady frame by
/// classic RK4 on xdot = u - c, ydot = v.
struct Trajectory {
    double p = 0.0; // stream level of the start point
    std::vector<double> t;
    std::vector<double> X, Y;   // physical frame, X = x + c t
    std::vector<double> xs, ys; // steady frame
    double tau = 0.0;           // time of the first full steady-frame period
    double drift = 0.0;         // c tau - 2 pi
    bool period_complete = false;
    double max_psi_drift = 0.0; // max |p(t) - p(0)| along the path
};

/// Integrate from physical start (X0, Y0) at t = 0 until `periods` steady-frame
/// periods have elapsed (or t_max, whichever comes first). dt <= 0 selects the
/// default (2 pi / c) / 2000.
Trajectory integrate_trajectory(const FieldSampler& fs, double X0, double Y0, double t_max,
                                double dt, int periods = 1);

/// int_{-d}^{eta(x)} (u - c) dy by composite Simpson on locate/velocity
/// queries; equals the relative mass flux p0 for an exact solution.
double mass_flux(const FieldSampler& fs, double x, int samples = 257);

} // namespace vorwave
