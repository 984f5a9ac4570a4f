#include "vorwave/grid.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/kernels.hpp"

#include <cmath>
#include <string>

namespace vorwave {

void WaveParameters::validate() const {
    if (!(g > 0.0)) throw DomainError("g must be positive");
    if (!(p0 < 0.0)) throw DomainError("p0 must be negative");
    if (nq < 16 || nq % 2 != 0) throw DomainError("Nq must be even and >= 16");
    if (np < 8) throw DomainError("Np must be >= 8");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be >= 1");
}

HodographGrid::HodographGrid(int nq_, int np_, double p0_) : nq(nq_), np(np_), p0(p0_) {
    dq = kTwoPi / nq;
    dp = -p0 / np;
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::fabs(x));
    return m;
}

GridField diff_q(const GridField& f, const HodographGrid& g) {
    GridField out(f.nq(), f.rows());
    kernels::active().diff_q(f.data(), out.data(), f.nq(), f.rows(), 1.0 / (2.0 * g.dq));
    return out;
}

GridField diff_p(const GridField& f, const HodographGrid& g) {
    GridField out(f.nq(), f.rows());
    kernels::active().diff_p(f.data(), out.data(), f.nq(), f.rows(), 1.0 / (2.0 * g.dp));
    return out;
}

GridField diff_qq(const GridField& f, const HodographGrid& g) {
    GridField out(f.nq(), f.rows());
    kernels::active().diff_qq(f.data(), out.data(), f.nq(), f.rows(), 1.0 / (g.dq * g.dq));
    return out;
}

GridField diff_pp(const GridField& f, const HodographGrid& g) {
    GridField out(f.nq(), f.rows());
    kernels::active().diff_pp(f.data(), out.data(), f.nq(), f.rows(), 1.0 / (g.dp * g.dp));
    return out;
}

double integrate_q_period(const double* row, int nq, double dq) {
    return kernels::active().reduce_trapezoid(row, nq, dq);
}

double integrate_q_half(const double* row, int nq, double dq) {
    const int i0 = nq / 2; // q = 0
    double s = 0.5 * row[i0] + 0.5 * row[0];
    for (int i = i0 + 1; i < nq; ++i) s += row[i];
    return s * dq;
}

} // namespace vorwave
