#include "vorwave/fields.hpp"
#include "vorwave/errors.hpp"

#include <cmath>
#include <sstream>

namespace vorwave {

namespace {

inline double wrap_q(double q) {
    q = std::fmod(q + kPi, kTwoPi);
    if (q < 0.0) q += kTwoPi;
    return q - kPi;
}

// periodic linear interpolation of a nodal array over [-pi, pi)
double interp_periodic(const std::vector<double>& a, double x, double dq) {
    const int n = static_cast<int>(a.size());
    double xi = (wrap_q(x) + kPi) / dq;
    int i = static_cast<int>(std::floor(xi));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    double s = xi - i;
    return (1.0 - s) * a[i] + s * a[(i + 1) % n];
}

} // namespace

PhysicalFrame derive_frame(const WaveSolution& sol) {
    const HodographGrid& grid = sol.grid;
    PhysicalFrame f;
    f.d = integrate_q_period(sol.h.row(grid.np), grid.nq, grid.dq) / kTwoPi;

    GridField hp = diff_p(sol.h, grid);
    std::vector<double> inv_hp(grid.nq);
    for (int i = 0; i < grid.nq; ++i) inv_hp[i] = 1.0 / hp.at(i, 0);
    f.c = integrate_q_period(inv_hp.data(), grid.nq, grid.dq) / kTwoPi;
    f.C = sol.Q - 2.0 * sol.params.g * f.d;

    f.eta.resize(grid.nq);
    f.eta_x.resize(grid.nq);
    f.eta_xx.resize(grid.nq);
    for (int i = 0; i < grid.nq; ++i) f.eta[i] = sol.h.at(i, grid.np) - f.d;
    const double inv2dq = 1.0 / (2.0 * grid.dq);
    const double invdq2 = 1.0 / (grid.dq * grid.dq);
    for (int i = 0; i < grid.nq; ++i) {
        double em = f.eta[(i + grid.nq - 1) % grid.nq];
        double ep = f.eta[(i + 1) % grid.nq];
        f.eta_x[i] = (ep - em) * inv2dq;
        f.eta_xx[i] = ((ep + em) - 2.0 * f.eta[i]) * invdq2;
        f.max_abs_eta_x = std::max(f.max_abs_eta_x, std::fabs(f.eta_x[i]));
    }
    return f;
}

FieldSampler::FieldSampler(const WaveSolution& sol, const PhysicalFrame& frame)
    : interp_(sol.grid, sol.h), frame_(frame), gamma0_(sol.gamma.eval(0.0)),
      g_(sol.params.g), p0_(sol.params.p0) {}

Velocity FieldSampler::velocity_hodograph(double q, double p) const {
    auto e = interp_.eval(q, p);
    if (!(e.hp > 0.0)) {
        std::ostringstream msg;
        msg << "stagnation query: interpolated h_p <= 0 at q=" << q << ", p=" << p;
        throw SolverError(SolverError::Kind::stagnation_query, msg.str());
    }
    Velocity vel;
    vel.u = frame_.c - 1.0 / e.hp;
    vel.v = -e.hq / e.hp;
    return vel;
}

double FieldSampler::surface_height(double x) const {
    return interp_.value(x, 0.0) - frame_.d;
}

double FieldSampler::locate_p(double x, double y) const {
    const double target = y + frame_.d; // h value sought
    const double eta = surface_height(x);
    // tolerate integrator-scale overshoot at the free surface and the bed
    const double slack = 1e-6 * std::max(1.0, frame_.d);
    if (y < -frame_.d - slack || y > eta + slack) {
        std::ostringstream msg;
        msg << "outside fluid domain: y=" << y << " not in [" << -frame_.d << ", " << eta
            << "] at x=" << x;
        throw SolverError(SolverError::Kind::outside_fluid_domain, msg.str());
    }
    double lo = p0_, hi = 0.0;
    double flo = 0.0 - target; // h(x, p0) = 0
    if (flo >= 0.0) return p0_;
    if (interp_.value(x, 0.0) - target <= 0.0) return 0.0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = interp_.value(x, mid) - target;
        if (fm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Velocity FieldSampler::velocity_physical(double x, double y) const {
    return velocity_hodograph(x, locate_p(x, y));
}

SurfaceDerivs surface_formulas_values(double C, double gamma0, double g, double eta,
                                      double eta_x, double eta_xx) {
    const double s = C - 2.0 * g * eta;
    if (!(s > 0.0))
        throw SolverError(SolverError::Kind::stagnation_query,
                          "stagnation at surface: C - 2 g eta <= 0");
    const double e2 = eta_x * eta_x;
    const double ope = 1.0 + e2;
    SurfaceDerivs out;
    out.psi_y2 = s / ope;
    out.Dx_psi_y2 = 2.0 * eta_x * ((2.0 * g * eta - C) * eta_xx - g * ope) / (ope * ope);
    const double root = std::sqrt(s);
    const double ope32 = ope * std::sqrt(ope);
    const double denom = ope * ope32 * root; // (1+eta'^2)^{5/2} sqrt(C-2g eta)
    out.psi_xy =
        eta_x * (2.0 * eta_xx * s + (1.0 - e2 * e2) * g + gamma0 * root * ope32) / denom;
    out.psi_yy =
        (eta_xx * s * (e2 - 1.0) + 2.0 * g * e2 * ope - gamma0 * root * ope32) / denom;
    return out;
}

SurfaceDerivs surface_formulas(const PhysicalFrame& frame, double gamma0, double g, double x) {
    const double dq = kTwoPi / static_cast<double>(frame.eta.size());
    double eta = interp_periodic(frame.eta, x, dq);
    double ex = interp_periodic(frame.eta_x, x, dq);
    double exx = interp_periodic(frame.eta_xx, x, dq);
    return surface_formulas_values(frame.C, gamma0, g, eta, ex, exx);
}

} // namespace vorwave
