#include "vorwave/kernels.hpp"
#include "detail.hpp"

#include <immintrin.h>

// AVX2 variants of the grid kernels. Lane arithmetic mirrors the scalar
// expression order exactly (no FMA), so stencil outputs are bit-identical to
// the reference backend; only the trapezoid reduction reassociates.

namespace vorwave::kernels {

namespace {

using namespace detail;

inline __m256d load(const double* p) { return _mm256_loadu_pd(p); }

void diff_q_avx2(const double* f, double* out, int nq, int rows, double inv2dq) {
    const __m256d vinv = _mm256_set1_pd(inv2dq);
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dq_elem(r[nq - 1], r[1], inv2dq);
        int i = 1;
        for (; i + 4 <= nq - 1; i += 4) {
            __m256d d = _mm256_sub_pd(load(r + i + 1), load(r + i - 1));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(d, vinv));
        }
        for (; i < nq - 1; ++i) o[i] = dq_elem(r[i - 1], r[i + 1], inv2dq);
        o[nq - 1] = dq_elem(r[nq - 2], r[0], inv2dq);
    }
}

void diff_p_avx2(const double* f, double* out, int nq, int rows, double inv2dp) {
    const int n = rows - 1;
    const __m256d vinv = _mm256_set1_pd(inv2dp);
    const __m256d c3 = _mm256_set1_pd(3.0);
    const __m256d c4 = _mm256_set1_pd(4.0);
    {
        const double* r0 = f;
        const double* r1 = f + static_cast<size_t>(1) * nq;
        const double* r2 = f + static_cast<size_t>(2) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d t = _mm256_sub_pd(_mm256_mul_pd(load(r1 + i), c4),
                                      _mm256_mul_pd(load(r0 + i), c3));
            t = _mm256_sub_pd(t, load(r2 + i));
            _mm256_storeu_pd(out + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq; ++i) out[i] = dp_bottom_elem(r0[i], r1[i], r2[i], inv2dp);
    }
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d d = _mm256_sub_pd(load(up + i), load(dn + i));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(d, vinv));
        }
        for (; i < nq; ++i) o[i] = dp_interior_elem(dn[i], up[i], inv2dp);
    }
    {
        const double* rn = f + static_cast<size_t>(n) * nq;
        const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
        const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
        double* on = out + static_cast<size_t>(n) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d t = _mm256_sub_pd(_mm256_mul_pd(load(rn + i), c3),
                                      _mm256_mul_pd(load(rn1 + i), c4));
            t = _mm256_add_pd(t, load(rn2 + i));
            _mm256_storeu_pd(on + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq; ++i) on[i] = dp_top_elem(rn[i], rn1[i], rn2[i], inv2dp);
    }
}

void diff_qq_avx2(const double* f, double* out, int nq, int rows, double invdq2) {
    const __m256d vinv = _mm256_set1_pd(invdq2);
    const __m256d c2 = _mm256_set1_pd(2.0);
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dqq_elem(r[nq - 1], r[0], r[1], invdq2);
        int i = 1;
        for (; i + 4 <= nq - 1; i += 4) {
            __m256d t = _mm256_add_pd(load(r + i + 1), load(r + i - 1));
            t = _mm256_sub_pd(t, _mm256_mul_pd(c2, load(r + i)));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq - 1; ++i) o[i] = dqq_elem(r[i - 1], r[i], r[i + 1], invdq2);
        o[nq - 1] = dqq_elem(r[nq - 2], r[nq - 1], r[0], invdq2);
    }
}

void diff_pp_avx2(const double* f, double* out, int nq, int rows, double invdp2) {
    const int n = rows - 1;
    const __m256d vinv = _mm256_set1_pd(invdp2);
    const __m256d c2 = _mm256_set1_pd(2.0);
    const __m256d c4 = _mm256_set1_pd(4.0);
    const __m256d c5 = _mm256_set1_pd(5.0);
    {
        const double* r0 = f;
        const double* r1 = f + static_cast<size_t>(1) * nq;
        const double* r2 = f + static_cast<size_t>(2) * nq;
        const double* r3 = f + static_cast<size_t>(3) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d t = _mm256_sub_pd(_mm256_mul_pd(load(r0 + i), c2),
                                      _mm256_mul_pd(load(r1 + i), c5));
            t = _mm256_add_pd(t, _mm256_mul_pd(load(r2 + i), c4));
            t = _mm256_sub_pd(t, load(r3 + i));
            _mm256_storeu_pd(out + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq; ++i) out[i] = dpp_bottom_elem(r0[i], r1[i], r2[i], r3[i], invdp2);
    }
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* c = f + static_cast<size_t>(j) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d t = _mm256_add_pd(load(up + i), load(dn + i));
            t = _mm256_sub_pd(t, _mm256_mul_pd(c2, load(c + i)));
            _mm256_storeu_pd(o + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq; ++i) o[i] = dpp_interior_elem(dn[i], c[i], up[i], invdp2);
    }
    {
        const double* rn = f + static_cast<size_t>(n) * nq;
        const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
        const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
        const double* rn3 = f + static_cast<size_t>(n - 3) * nq;
        double* on = out + static_cast<size_t>(n) * nq;
        int i = 0;
        for (; i + 4 <= nq; i += 4) {
            __m256d t = _mm256_sub_pd(_mm256_mul_pd(load(rn + i), c2),
                                      _mm256_mul_pd(load(rn1 + i), c5));
            t = _mm256_add_pd(t, _mm256_mul_pd(load(rn2 + i), c4));
            t = _mm256_sub_pd(t, load(rn3 + i));
            _mm256_storeu_pd(on + i, _mm256_mul_pd(t, vinv));
        }
        for (; i < nq; ++i) on[i] = dpp_top_elem(rn[i], rn1[i], rn2[i], rn3[i], invdp2);
    }
}

void interior_residual_avx2(const double* h, double* out, int nq, int rows,
                            double inv2dq, double inv2dp, double invdq2,
                            double invdp2, double inv4dqdp, const double* gamma_rows) {
    for (int i = 0; i < nq; ++i) {
        out[i] = 0.0;
        out[static_cast<size_t>(rows - 1) * nq + i] = 0.0;
    }
    const __m256d vi2q = _mm256_set1_pd(inv2dq);
    const __m256d vi2p = _mm256_set1_pd(inv2dp);
    const __m256d viq2 = _mm256_set1_pd(invdq2);
    const __m256d vip2 = _mm256_set1_pd(invdp2);
    const __m256d vi4 = _mm256_set1_pd(inv4dqdp);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    for (int j = 1; j < rows - 1; ++j) {
        const double* c = h + static_cast<size_t>(j) * nq;
        const double* d = h + static_cast<size_t>(j - 1) * nq;
        const double* u = h + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        const double gj = gamma_rows[j];
        const __m256d vg = _mm256_set1_pd(gj);
        o[0] = residual_elem(c[nq - 1], c[0], c[1], d[nq - 1], d[0], d[1],
                             u[nq - 1], u[0], u[1], inv2dq, inv2dp, invdq2, invdp2,
                             inv4dqdp, gj);
        int i = 1;
        for (; i + 4 <= nq - 1; i += 4) {
            __m256d cm1 = load(c + i - 1), c0 = load(c + i), cp1 = load(c + i + 1);
            __m256d dm1 = load(d + i - 1), d0 = load(d + i), dp1 = load(d + i + 1);
            __m256d um1 = load(u + i - 1), u0 = load(u + i), up1 = load(u + i + 1);
            __m256d hq = _mm256_mul_pd(_mm256_sub_pd(cp1, cm1), vi2q);
            __m256d hp = _mm256_mul_pd(_mm256_sub_pd(u0, d0), vi2p);
            __m256d hpp = _mm256_mul_pd(
                _mm256_sub_pd(_mm256_add_pd(u0, d0), _mm256_mul_pd(two, c0)), vip2);
            __m256d hqq = _mm256_mul_pd(
                _mm256_sub_pd(_mm256_add_pd(cp1, cm1), _mm256_mul_pd(two, c0)), viq2);
            __m256d hpq = _mm256_mul_pd(
                _mm256_sub_pd(_mm256_sub_pd(up1, um1), _mm256_sub_pd(dp1, dm1)), vi4);
            __m256d t1 = _mm256_mul_pd(hq, hq);
            __m256d t2 = _mm256_add_pd(one, t1);
            __m256d t3 = _mm256_mul_pd(t2, hpp);
            __m256d t4 = _mm256_mul_pd(hp, hq);
            __m256d t5 = _mm256_mul_pd(t4, hpq);
            __m256d t6 = _mm256_sub_pd(t3, _mm256_mul_pd(two, t5));
            __m256d t7 = _mm256_mul_pd(hp, hp);
            __m256d t8 = _mm256_mul_pd(t7, hqq);
            __m256d t9 = _mm256_add_pd(t6, t8);
            __m256d t10 = _mm256_mul_pd(t7, hp);
            __m256d t11 = _mm256_mul_pd(vg, t10);
            _mm256_storeu_pd(o + i, _mm256_add_pd(t9, t11));
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

double reduce_trapezoid_avx2(const double* f, int n, double dx) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, load(f + i));
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (; i < n; ++i) s += f[i];
    return s * dx;
}

const Backend avx2_backend_v{
    "avx2",
    diff_q_avx2,
    diff_p_avx2,
    diff_qq_avx2,
    diff_pp_avx2,
    interior_residual_avx2,
    reduce_trapezoid_avx2,
};

} // namespace

const Backend* avx2_backend() { return &avx2_backend_v; }

} // namespace vorwave::kernels
