#include "vorwave/kinematics.hpp"
#include "vorwave/errors.hpp"

#include <cmath>

namespace vorwave {

Streamline streamline(const FieldSampler& fs, double p) {
    const HodographGrid& grid = fs.grid();
    if (p < grid.p0 - 1e-12 || p > 1e-12) throw DomainError("stream level outside [p0, 0]");
    Streamline s;
    s.p = p;
    s.x.resize(grid.nq);
    s.sigma.resize(grid.nq);
    s.slope.resize(grid.nq);
    for (int i = 0; i < grid.nq; ++i) {
        auto e = fs.interpolant().eval(grid.q(i), p);
        s.x[i] = grid.q(i);
        s.sigma[i] = e.h - fs.frame().d;
        s.slope[i] = e.hq;
        s.max_steepness = std::max(s.max_steepness, std::fabs(e.hq));
    }
    return s;
}

DriftResult traversal_and_drift(const FieldSampler& fs, double p) {
    const HodographGrid& grid = fs.grid();
    if (p < grid.p0 - 1e-12 || p > 1e-12) throw DomainError("stream level outside [p0, 0]");
    std::vector<double> hp(grid.nq);
    for (int i = 0; i < grid.nq; ++i) hp[i] = fs.interpolant().dp(grid.q(i), p);
    DriftResult out;
    out.tau = integrate_q_period(hp.data(), grid.nq, grid.dq);
    out.drift = fs.frame().c * out.tau - kTwoPi;
    return out;
}

Trajectory integrate_trajectory(const FieldSampler& fs, double X0, double Y0, double t_max,
                                double dt, int periods) {
    const double c = fs.frame().c;
    if (dt <= 0.0) dt = (kTwoPi / c) / 2000.0;
    Trajectory traj;
    traj.p = fs.locate_p(X0, Y0); // throws if outside the fluid
    double x = X0, y = Y0, t = 0.0;

    auto vel = [&fs, c](double xx, double yy, double& dx, double& dy) {
        Velocity v = fs.velocity_physical(xx, yy);
        dx = v.u - c;
        dy = v.v;
    };

    traj.t.push_back(0.0);
    traj.X.push_back(X0);
    traj.Y.push_back(Y0);
    traj.xs.push_back(X0);
    traj.ys.push_back(Y0);

    int crossings = 0;
    const double span = kTwoPi;
    while (t < t_max - 1e-15 && crossings < periods) {
        double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
        vel(x, y, k1x, k1y);
        vel(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y, k2x, k2y);
        vel(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y, k3x, k3y);
        vel(x + dt * k3x, y + dt * k3y, k4x, k4y);
        double xn = x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        double yn = y + dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        double tn = t + dt;

        // steady-frame x decreases monotonically; detect period crossings
        double mark = X0 - span * (crossings + 1);
        if (xn <= mark && x > mark) {
            double w = (x - mark) / (x - xn);
            double tc = t + w * dt;
            ++crossings;
            if (crossings == 1) {
                traj.tau = tc;
                traj.drift = c * tc - kTwoPi;
                traj.period_complete = true;
            }
        }
        x = xn;
        y = yn;
        t = tn;
        traj.t.push_back(t);
        traj.xs.push_back(x);
        traj.ys.push_back(y);
        traj.X.push_back(x + c * t);
        traj.Y.push_back(y);
        // stream-function conservation: vertical deviation from the particle's
        // stream level, converted to p-units (robust on the boundary levels)
        auto e = fs.interpolant().eval(x, traj.p);
        double dev = (y + fs.frame().d - e.h) / e.hp;
        traj.max_psi_drift = std::max(traj.max_psi_drift, std::fabs(dev));
    }
    return traj;
}

double mass_flux(const FieldSampler& fs, double x, int samples) {
    if (samples < 3) samples = 3;
    if (samples % 2 == 0) ++samples; // Simpson needs an odd count
    const double d = fs.frame().d;
    const double eta = fs.surface_height(x);
    const double h = (eta + d) / static_cast<double>(samples - 1);
    auto f = [&](int k) {
        double y = -d + h * k;
        Velocity v = fs.velocity_physical(x, y);
        return v.u - fs.frame().c;
    };
    double s = f(0) + f(samples - 1);
    for (int k = 1; k < samples - 1; k += 2) s += 4.0 * f(k);
    for (int k = 2; k < samples - 1; k += 2) s += 2.0 * f(k);
    return s * h / 3.0;
}

} // namespace vorwave
