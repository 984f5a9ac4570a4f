#include "vorwave/kernels.hpp"
#include "detail.hpp"

#include <arm_neon.h>

// NEON variants (2 double lanes). Same lane-order discipline as the AVX2
// backend: stencil kernels are bit-identical to scalar, the reduction is
// equivalence-tested to a tolerance.

namespace vorwave::kernels {

namespace {

using namespace detail;

void diff_q_neon(const double* f, double* out, int nq, int rows, double inv2dq) {
    const float64x2_t vinv = vdupq_n_f64(inv2dq);
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dq_elem(r[nq - 1], r[1], inv2dq);
        int i = 1;
        for (; i + 2 <= nq - 1; i += 2) {
            float64x2_t d = vsubq_f64(vld1q_f64(r + i + 1), vld1q_f64(r + i - 1));
            vst1q_f64(o + i, vmulq_f64(d, vinv));
        }
        for (; i < nq - 1; ++i) o[i] = dq_elem(r[i - 1], r[i + 1], inv2dq);
        o[nq - 1] = dq_elem(r[nq - 2], r[0], inv2dq);
    }
}

void diff_p_neon(const double* f, double* out, int nq, int rows, double inv2dp) {
    const int n = rows - 1;
    for (int i = 0; i < nq; ++i)
        out[i] = dp_bottom_elem(f[i], f[nq + i], f[2 * nq + i], inv2dp);
    const float64x2_t vinv = vdupq_n_f64(inv2dp);
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        int i = 0;
        for (; i + 2 <= nq; i += 2) {
            float64x2_t d = vsubq_f64(vld1q_f64(up + i), vld1q_f64(dn + i));
            vst1q_f64(o + i, vmulq_f64(d, vinv));
        }
        for (; i < nq; ++i) o[i] = dp_interior_elem(dn[i], up[i], inv2dp);
    }
    const double* rn = f + static_cast<size_t>(n) * nq;
    const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
    const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
    double* on = out + static_cast<size_t>(n) * nq;
    for (int i = 0; i < nq; ++i) on[i] = dp_top_elem(rn[i], rn1[i], rn2[i], inv2dp);
}

void diff_qq_neon(const double* f, double* out, int nq, int rows, double invdq2) {
    const float64x2_t vinv = vdupq_n_f64(invdq2);
    const float64x2_t two = vdupq_n_f64(2.0);
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dqq_elem(r[nq - 1], r[0], r[1], invdq2);
        int i = 1;
        for (; i + 2 <= nq - 1; i += 2) {
            float64x2_t t = vaddq_f64(vld1q_f64(r + i + 1), vld1q_f64(r + i - 1));
            t = vsubq_f64(t, vmulq_f64(two, vld1q_f64(r + i)));
            vst1q_f64(o + i, vmulq_f64(t, vinv));
        }
        for (; i < nq - 1; ++i) o[i] = dqq_elem(r[i - 1], r[i], r[i + 1], invdq2);
        o[nq - 1] = dqq_elem(r[nq - 2], r[nq - 1], r[0], invdq2);
    }
}

void diff_pp_neon(const double* f, double* out, int nq, int rows, double invdp2) {
    const int n = rows - 1;
    for (int i = 0; i < nq; ++i)
        out[i] = dpp_bottom_elem(f[i], f[nq + i], f[2 * nq + i], f[3 * nq + i], invdp2);
    const float64x2_t vinv = vdupq_n_f64(invdp2);
    const float64x2_t two = vdupq_n_f64(2.0);
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* c = f + static_cast<size_t>(j) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        int i = 0;
        for (; i + 2 <= nq; i += 2) {
            float64x2_t t = vaddq_f64(vld1q_f64(up + i), vld1q_f64(dn + i));
            t = vsubq_f64(t, vmulq_f64(two, vld1q_f64(c + i)));
            vst1q_f64(o + i, vmulq_f64(t, vinv));
        }
        for (; i < nq; ++i) o[i] = dpp_interior_elem(dn[i], c[i], up[i], invdp2);
    }
    const double* rn = f + static_cast<size_t>(n) * nq;
    const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
    const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
    const double* rn3 = f + static_cast<size_t>(n - 3) * nq;
    double* on = out + static_cast<size_t>(n) * nq;
    for (int i = 0; i < nq; ++i) on[i] = dpp_top_elem(rn[i], rn1[i], rn2[i], rn3[i], invdp2);
}

void interior_residual_neon(const double* h, double* out, int nq, int rows,
                            double inv2dq, double inv2dp, double invdq2,
                            double invdp2, double inv4dqdp, const double* gamma_rows) {
    for (int i = 0; i < nq; ++i) {
        out[i] = 0.0;
        out[static_cast<size_t>(rows - 1) * nq + i] = 0.0;
    }
    const float64x2_t vi2q = vdupq_n_f64(inv2dq);
    const float64x2_t vi2p = vdupq_n_f64(inv2dp);
    const float64x2_t viq2 = vdupq_n_f64(invdq2);
    const float64x2_t vip2 = vdupq_n_f64(invdp2);
    const float64x2_t vi4 = vdupq_n_f64(inv4dqdp);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t two = vdupq_n_f64(2.0);
    for (int j = 1; j < rows - 1; ++j) {
        const double* c = h + static_cast<size_t>(j) * nq;
        const double* d = h + static_cast<size_t>(j - 1) * nq;
        const double* u = h + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        const double gj = gamma_rows[j];
        const float64x2_t vg = vdupq_n_f64(gj);
        o[0] = residual_elem(c[nq - 1], c[0], c[1], d[nq - 1], d[0], d[1],
                             u[nq - 1], u[0], u[1], inv2dq, inv2dp, invdq2, invdp2,
                             inv4dqdp, gj);
        int i = 1;
        for (; i + 2 <= nq - 1; i += 2) {
            float64x2_t cm1 = vld1q_f64(c + i - 1), c0 = vld1q_f64(c + i), cp1 = vld1q_f64(c + i + 1);
            float64x2_t dm1 = vld1q_f64(d + i - 1), d0 = vld1q_f64(d + i), dp1 = vld1q_f64(d + i + 1);
            float64x2_t um1 = vld1q_f64(u + i - 1), u0 = vld1q_f64(u + i), up1 = vld1q_f64(u + i + 1);
            float64x2_t hq = vmulq_f64(vsubq_f64(cp1, cm1), vi2q);
            float64x2_t hp = vmulq_f64(vsubq_f64(u0, d0), vi2p);
            float64x2_t hpp = vmulq_f64(vsubq_f64(vaddq_f64(u0, d0), vmulq_f64(two, c0)), vip2);
            float64x2_t hqq = vmulq_f64(vsubq_f64(vaddq_f64(cp1, cm1), vmulq_f64(two, c0)), viq2);
            float64x2_t hpq = vmulq_f64(vsubq_f64(vsubq_f64(up1, um1), vsubq_f64(dp1, dm1)), vi4);
            float64x2_t t1 = vmulq_f64(hq, hq);
            float64x2_t t2 = vaddq_f64(one, t1);
            float64x2_t t3 = vmulq_f64(t2, hpp);
            float64x2_t t4 = vmulq_f64(hp, hq);
            float64x2_t t5 = vmulq_f64(t4, hpq);
            float64x2_t t6 = vsubq_f64(t3, vmulq_f64(two, t5));
            float64x2_t t7 = vmulq_f64(hp, hp);
            float64x2_t t8 = vmulq_f64(t7, hqq);
            float64x2_t t9 = vaddq_f64(t6, t8);
            float64x2_t t10 = vmulq_f64(t7, hp);
            float64x2_t t11 = vmulq_f64(vg, t10);
            vst1q_f64(o + i, vaddq_f64(t9, t11));
        }
        for (; i < nq - 1; ++i)
            o[i] = residual_elem(c[i - 1], c[i], c[i + 1], d[i - 1], d[i], d[i + 1],
                                 u[i - 1], u[i], u[i + 1], inv2dq, inv2dp, invdq2,
                                 invdp2, inv4dqdp, gj);
        o[nq - 1] = residual_elem(c[nq - 2], c[nq - 1], c[0], d[nq - 2], d[nq - 1], d[0],
                                  u[nq - 2], u[nq - 1], u[0], inv2dq, inv2dp, invdq2,
                                  invdp2, inv4dqdp, gj);
    }
}

double reduce_trapezoid_neon(const double* f, int n, double dx) {
    float64x2_t acc = vdupq_n_f64(0.0);
    int i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(f + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += f[i];
    return s * dx;
}

const Backend neon_backend_v{
    "neon",
    diff_q_neon,
    diff_p_neon,
    diff_qq_neon,
    diff_pp_neon,
    interior_residual_neon,
    reduce_trapezoid_neon,
};

} // namespace

const Backend* neon_backend() { return &neon_backend_v; }

} // namespace vorwave::kernels
