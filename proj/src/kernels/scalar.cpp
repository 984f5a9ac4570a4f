#include "vorwave/kernels.hpp"
#include "detail.hpp"

namespace vorwave::kernels {

namespace {

using namespace detail;

void diff_q_scalar(const double* f, double* out, int nq, int rows, double inv2dq) {
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dq_elem(r[nq - 1], r[1], inv2dq);
        for (int i = 1; i < nq - 1; ++i) o[i] = dq_elem(r[i - 1], r[i + 1], inv2dq);
        o[nq - 1] = dq_elem(r[nq - 2], r[0], inv2dq);
    }
}

void diff_p_scalar(const double* f, double* out, int nq, int rows, double inv2dp) {
    const int n = rows - 1;
    const double* r0 = f;
    const double* r1 = f + static_cast<size_t>(1) * nq;
    const double* r2 = f + static_cast<size_t>(2) * nq;
    for (int i = 0; i < nq; ++i) out[i] = dp_bottom_elem(r0[i], r1[i], r2[i], inv2dp);
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        for (int i = 0; i < nq; ++i) o[i] = dp_interior_elem(dn[i], up[i], inv2dp);
    }
    const double* rn = f + static_cast<size_t>(n) * nq;
    const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
    const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
    double* on = out + static_cast<size_t>(n) * nq;
    for (int i = 0; i < nq; ++i) on[i] = dp_top_elem(rn[i], rn1[i], rn2[i], inv2dp);
}

void diff_qq_scalar(const double* f, double* out, int nq, int rows, double invdq2) {
    for (int j = 0; j < rows; ++j) {
        const double* r = f + static_cast<size_t>(j) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        o[0] = dqq_elem(r[nq - 1], r[0], r[1], invdq2);
        for (int i = 1; i < nq - 1; ++i) o[i] = dqq_elem(r[i - 1], r[i], r[i + 1], invdq2);
        o[nq - 1] = dqq_elem(r[nq - 2], r[nq - 1], r[0], invdq2);
    }
}

void diff_pp_scalar(const double* f, double* out, int nq, int rows, double invdp2) {
    const int n = rows - 1;
    const double* r0 = f;
    const double* r1 = f + static_cast<size_t>(1) * nq;
    const double* r2 = f + static_cast<size_t>(2) * nq;
    const double* r3 = f + static_cast<size_t>(3) * nq;
    for (int i = 0; i < nq; ++i) out[i] = dpp_bottom_elem(r0[i], r1[i], r2[i], r3[i], invdp2);
    for (int j = 1; j < n; ++j) {
        const double* dn = f + static_cast<size_t>(j - 1) * nq;
        const double* c = f + static_cast<size_t>(j) * nq;
        const double* up = f + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        for (int i = 0; i < nq; ++i) o[i] = dpp_interior_elem(dn[i], c[i], up[i], invdp2);
    }
    const double* rn = f + static_cast<size_t>(n) * nq;
    const double* rn1 = f + static_cast<size_t>(n - 1) * nq;
    const double* rn2 = f + static_cast<size_t>(n - 2) * nq;
    const double* rn3 = f + static_cast<size_t>(n - 3) * nq;
    double* on = out + static_cast<size_t>(n) * nq;
    for (int i = 0; i < nq; ++i) on[i] = dpp_top_elem(rn[i], rn1[i], rn2[i], rn3[i], invdp2);
}

void interior_residual_scalar(const double* h, double* out, int nq, int rows,
                              double inv2dq, double inv2dp, double invdq2,
                              double invdp2, double inv4dqdp, const double* gamma_rows) {
    for (int i = 0; i < nq; ++i) {
        out[i] = 0.0;
        out[static_cast<size_t>(rows - 1) * nq + i] = 0.0;
    }
    for (int j = 1; j < rows - 1; ++j) {
        const double* c = h + static_cast<size_t>(j) * nq;
        const double* d = h + static_cast<size_t>(j - 1) * nq;
        const double* u = h + static_cast<size_t>(j + 1) * nq;
        double* o = out + static_cast<size_t>(j) * nq;
        const double gj = gamma_rows[j];
        o[0] = residual_elem(c[nq - 1], c[0], c[1], d[nq - 1], d[0], d[1],
                             u[nq - 1], u[0], u[1], inv2dq, inv2dp, invdq2, invdp2,
                             inv4dqdp, gj);
        for (int i = 1; i < nq - 1; ++i)
            o[i] = residual_elem(c[i - 1], c[i], c[i + 1], d[i - 1], d[i], d[i + 1],
                                 u[i - 1], u[i], u[i + 1], inv2dq, inv2dp, invdq2,
                                 invdp2, inv4dqdp, gj);
        o[nq - 1] = residual_elem(c[nq - 2], c[nq - 1], c[0], d[nq - 2], d[nq - 1], d[0],
                                  u[nq - 2], u[nq - 1], u[0], inv2dq, inv2dp, invdq2,
                                  invdp2, inv4dqdp, gj);
    }
}

double reduce_trapezoid_scalar(const double* f, int n, double dx) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += f[i];
    return s * dx;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{
        "scalar",
        diff_q_scalar,
        diff_p_scalar,
        diff_qq_scalar,
        diff_pp_scalar,
        interior_residual_scalar,
        reduce_trapezoid_scalar,
    };
    return b;
}

} // namespace vorwave::kernels
