#pragma once

#include "vorwave/grid.hpp"

namespace vorwave {

/// C1 piecewise-cubic Hermite surface through the nodal values of h, with
/// nodal partial derivatives taken from the same finite-difference stencils
/// the solver uses (periodic central in q; central / one-sided in p). At the
/// nodes, value and partials reproduce the discrete grids exactly, and the
/// full-period q-integral of any interpolated row telescopes to the trapezoid
/// sum of its nodal values, which keeps trajectory quadratures consistent with
/// the grid quadratures.
class HodographInterpolant {
public:
    HodographInterpolant(const HodographGrid& grid, const GridField& h);

    struct Eval {
        double h;
        double hq;
        double hp;
    };

    double value(double q, double p) const;
    double dq(double q, double p) const;
    double dp(double q, double p) const;
    Eval eval(double q, double p) const;

    const HodographGrid& grid() const { return grid_; }
    const GridField& hq_grid() const { return hq_; }
    const GridField& hp_grid() const { return hp_; }

private:
    void locate_cell(double q, double p, int& i, int& j, double& s, double& t) const;

    HodographGrid grid_;
    GridField h_, hq_, hp_, hqp_;
};

} // namespace vorwave
