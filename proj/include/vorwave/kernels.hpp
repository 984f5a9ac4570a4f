#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vorwave::kernels {

// Hot grid loops behind a runtime-dispatched backend. Fields are dense
// row-major arrays: rows = np+1 levels of constant p, each of nq periodic
// q-samples, element (i, j) at f[j*nq + i].
//
// The scalar backend is the reference. Vector backends must reproduce the
// stencil kernels bit-for-bit (same per-element operation order, no FMA
// contraction); the reduction kernel may reassociate and is equivalence-tested
// against the reference to a tolerance instead.
struct Backend {
    const char* name;

    // Periodic second-order central d/dq, all rows.
    void (*diff_q)(const double* f, double* out, int nq, int rows, double inv2dq);
    // d/dp: central on interior rows, second-order one-sided at j=0 and j=rows-1.
    void (*diff_p)(const double* f, double* out, int nq, int rows, double inv2dp);
    // Periodic central second difference in q, all rows.
    void (*diff_qq)(const double* f, double* out, int nq, int rows, double invdq2);
    // Second difference in p: central interior, one-sided 4-point at the ends.
    void (*diff_pp)(const double* f, double* out, int nq, int rows, double invdp2);
    // Quasilinear interior residual
    //   (1+hq^2) hpp - 2 hp hq hpq + hp^2 hqq + gamma_j hp^3
    // on rows 1..rows-2; boundary rows of `out` are zeroed.
    void (*interior_residual)(const double* h, double* out, int nq, int rows,
                              double inv2dq, double inv2dp, double invdq2,
                              double invdp2, double inv4dqdp, const double* gamma_rows);
    // Full-period trapezoid of one periodic row: sum(f[0..n-1]) * dx.
    double (*reduce_trapezoid)(const double* f, int n, double dx);
};

/// Currently active backend (auto-selected on first use).
const Backend& active();

/// Force a backend: "auto", "scalar", "avx2" or "neon".
/// Returns false (and leaves the selection unchanged) if unavailable.
bool select(std::string_view name);

/// Names of backends compiled in and usable on this machine.
std::vector<std::string> available();

const Backend& scalar_backend();

} // namespace vorwave::kernels
