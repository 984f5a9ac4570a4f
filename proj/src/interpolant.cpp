#include "vorwave/interpolant.hpp"

#include <cmath>

namespace vorwave {

namespace {

// Cubic Hermite basis on [0,1].
inline void hermite(double s, double& b0, double& b1, double& c0, double& c1) {
    double s2 = s * s, s3 = s2 * s;
    b0 = 2.0 * s3 - 3.0 * s2 + 1.0;
    b1 = -2.0 * s3 + 3.0 * s2;
    c0 = s3 - 2.0 * s2 + s;
    c1 = s3 - s2;
}

inline void hermite_d(double s, double& b0, double& b1, double& c0, double& c1) {
    double s2 = s * s;
    b0 = 6.0 * s2 - 6.0 * s;
    b1 = -6.0 * s2 + 6.0 * s;
    c0 = 3.0 * s2 - 4.0 * s + 1.0;
    c1 = 3.0 * s2 - 2.0 * s;
}

inline double wrap_q(double q) {
    q = std::fmod(q + kPi, kTwoPi);
    if (q < 0.0) q += kTwoPi;
    return q - kPi;
}

} // namespace

HodographInterpolant::HodographInterpolant(const HodographGrid& grid, const GridField& h)
    : grid_(grid), h_(h), hq_(diff_q(h, grid)), hp_(diff_p(h, grid)),
      hqp_(diff_q(hp_, grid)) {}

void HodographInterpolant::locate_cell(double q, double p, int& i, int& j, double& s,
                                       double& t) const {
    q = wrap_q(q);
    double qi = (q + kPi) / grid_.dq;
    i = static_cast<int>(std::floor(qi));
    if (i < 0) i = 0;
    if (i >= grid_.nq) i = grid_.nq - 1;
    s = qi - i;
    // clamp p into [p0, 0]
    if (p < grid_.p0) p = grid_.p0;
    if (p > 0.0) p = 0.0;
    double pj = (p - grid_.p0) / grid_.dp;
    j = static_cast<int>(std::floor(pj));
    if (j < 0) j = 0;
    if (j >= grid_.np) j = grid_.np - 1;
    t = pj - j;
}

HodographInterpolant::Eval HodographInterpolant::eval(double q, double p) const {
    int i, j;
    double s, t;
    locate_cell(q, p, i, j, s, t);
    const int i1 = (i + 1) % grid_.nq;
    const int j1 = j + 1;
    const double dq = grid_.dq, dp = grid_.dp;

    // corner data
    const double f00 = h_.at(i, j), f10 = h_.at(i1, j), f01 = h_.at(i, j1), f11 = h_.at(i1, j1);
    const double fq00 = hq_.at(i, j), fq10 = hq_.at(i1, j), fq01 = hq_.at(i, j1),
                 fq11 = hq_.at(i1, j1);
    const double fp00 = hp_.at(i, j), fp10 = hp_.at(i1, j), fp01 = hp_.at(i, j1),
                 fp11 = hp_.at(i1, j1);
    const double fqp00 = hqp_.at(i, j), fqp10 = hqp_.at(i1, j), fqp01 = hqp_.at(i, j1),
                 fqp11 = hqp_.at(i1, j1);

    double a0, a1, g0, g1, da0, da1, dg0, dg1;
    hermite(s, a0, a1, g0, g1);
    hermite_d(s, da0, da1, dg0, dg1);
    double b0, b1, e0, e1, db0, db1, de0, de1;
    hermite(t, b0, b1, e0, e1);
    hermite_d(t, db0, db1, de0, de1);

    // blend in q for each p-edge quantity
    auto blend_q = [&](double v0, double v1, double m0, double m1, double w0, double w1,
                       double u0, double u1) { return w0 * v0 + w1 * v1 + u0 * dq * m0 + u1 * dq * m1; };

    const double H0 = blend_q(f00, f10, fq00, fq10, a0, a1, g0, g1);
    const double H1 = blend_q(f01, f11, fq01, fq11, a0, a1, g0, g1);
    const double P0 = blend_q(fp00, fp10, fqp00, fqp10, a0, a1, g0, g1);
    const double P1 = blend_q(fp01, fp11, fqp01, fqp11, a0, a1, g0, g1);

    const double Hq0 = blend_q(f00, f10, fq00, fq10, da0, da1, dg0, dg1) / dq;
    const double Hq1 = blend_q(f01, f11, fq01, fq11, da0, da1, dg0, dg1) / dq;
    const double Pq0 = blend_q(fp00, fp10, fqp00, fqp10, da0, da1, dg0, dg1) / dq;
    const double Pq1 = blend_q(fp01, fp11, fqp01, fqp11, da0, da1, dg0, dg1) / dq;

    Eval out;
    out.h = b0 * H0 + b1 * H1 + e0 * dp * P0 + e1 * dp * P1;
    out.hq = b0 * Hq0 + b1 * Hq1 + e0 * dp * Pq0 + e1 * dp * Pq1;
    out.hp = (db0 * H0 + db1 * H1 + de0 * dp * P0 + de1 * dp * P1) / dp;
    return out;
}

double HodographInterpolant::value(double q, double p) const { return eval(q, p).h; }
double HodographInterpolant::dq(double q, double p) const { return eval(q, p).hq; }
double HodographInterpolant::dp(double q, double p) const { return eval(q, p).hp; }

} // namespace vorwave
