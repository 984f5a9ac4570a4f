#pragma once

// Per-element stencil expressions shared by all backends. Vector backends use
// these for wrap/tail elements and mirror the same operation order in lanes,
// which keeps scalar and SIMD outputs bit-identical. Compile every kernel TU
// with -ffp-contract=off.

namespace vorwave::kernels::detail {

inline double dq_elem(double fm1, double fp1, double inv2dq) {
    return (fp1 - fm1) * inv2dq;
}

inline double dp_interior_elem(double fdn, double fup, double inv2dp) {
    return (fup - fdn) * inv2dp;
}

inline double dp_bottom_elem(double f0, double f1, double f2, double inv2dp) {
    double t = f1 * 4.0 - f0 * 3.0;
    return (t - f2) * inv2dp;
}

inline double dp_top_elem(double fn, double fnm1, double fnm2, double inv2dp) {
    double t = fn * 3.0 - fnm1 * 4.0;
    return (t + fnm2) * inv2dp;
}

inline double dqq_elem(double fm1, double fc, double fp1, double invdq2) {
    double t = fp1 + fm1;
    return (t - 2.0 * fc) * invdq2;
}

inline double dpp_interior_elem(double fdn, double fc, double fup, double invdp2) {
    double t = fup + fdn;
    return (t - 2.0 * fc) * invdp2;
}

inline double dpp_bottom_elem(double f0, double f1, double f2, double f3, double invdp2) {
    double t = f0 * 2.0 - f1 * 5.0;
    t = t + f2 * 4.0;
    return (t - f3) * invdp2;
}

inline double dpp_top_elem(double fn, double fnm1, double fnm2, double fnm3, double invdp2) {
    double t = fn * 2.0 - fnm1 * 5.0;
    t = t + fnm2 * 4.0;
    return (t - fnm3) * invdp2;
}

inline double residual_elem(double cm1, double c0, double cp1,
                            double dm1, double d0, double dp1,
                            double um1, double u0, double up1,
                            double inv2dq, double inv2dp, double invdq2,
                            double invdp2, double inv4dqdp, double gamma_j) {
    double hq = (cp1 - cm1) * inv2dq;
    double hp = (u0 - d0) * inv2dp;
    double hpp = ((u0 + d0) - 2.0 * c0) * invdp2;
    double hqq = ((cp1 + cm1) - 2.0 * c0) * invdq2;
    double hpq = ((up1 - um1) - (dp1 - dm1)) * inv4dqdp;
    double t1 = hq * hq;
    double t2 = 1.0 + t1;
    double t3 = t2 * hpp;
    double t4 = hp * hq;
    double t5 = t4 * hpq;
    double t6 = t3 - 2.0 * t5;
    double t7 = hp * hp;
    double t8 = t7 * hqq;
    double t9 = t6 + t8;
    double t10 = t7 * hp;
    double t11 = gamma_j * t10;
    return t9 + t11;
}

} // namespace vorwave::kernels::detail
