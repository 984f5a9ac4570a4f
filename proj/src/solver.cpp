#include "vorwave/solver.hpp"
#include "vorwave/banded.hpp"
#include "vorwave/errors.hpp"
#include "vorwave/interpolant.hpp"
#include "vorwave/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vorwave {

namespace {

// Half-period index map: kappa = 0 is the crest line q = 0, kappa = M-1 the
// trough line q = pi (M = nq/2 + 1). Full index nq/2 + kappa, mod nq.
inline int full_index(int kappa, int nq) { return (nq / 2 + kappa) % nq; }
inline int half_index(int i, int nq) { return std::abs(i - nq / 2); }

std::vector<double> gamma_rows(const VorticitySpec& gamma, const HodographGrid& grid) {
    std::vector<double> out(grid.rows());
    for (int j = 0; j <= grid.np; ++j) out[j] = gamma.eval(-grid.p(j));
    return out;
}

void check_preconditions(const GridField& h, const HodographGrid& grid) {
    const int nq = grid.nq;
    double scale = std::max(1.0, h.max_abs());
    for (int i = 0; i < nq; ++i)
        if (std::fabs(h.at(i, 0)) > 1e-14 * scale)
            throw DomainError("height field violates the bottom condition h(q, p0) = 0");
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 1; i < nq / 2; ++i)
            if (std::fabs(h.at(i, j) - h.at(nq - i, j)) > 1e-12 * scale)
                throw DomainError("height field violates evenness in q");
}

void check_no_stagnation(const GridField& h, const HodographGrid& grid) {
    GridField hp = diff_p(h, grid);
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 0; i < grid.nq; ++i)
            if (!(hp.at(i, j) > 0.0)) {
                std::ostringstream msg;
                msg << "stagnation in iterate: h_p <= 0 at q=" << grid.q(i) << ", p=" << grid.p(j);
                throw SolverError(SolverError::Kind::stagnation_in_iterate, msg.str());
            }
}

void surface_residual_row(const GridField& h, double Q, const WaveParameters& params,
                          const HodographGrid& grid, double* out) {
    const int nq = grid.nq, np = grid.np;
    const double inv2dq = 1.0 / (2.0 * grid.dq);
    const double inv2dp = 1.0 / (2.0 * grid.dp);
    for (int i = 0; i < nq; ++i) {
        double hq = (h.atw(i + 1, np) - h.atw(i - 1, np)) * inv2dq;
        double hp = (3.0 * h.at(i, np) - 4.0 * h.at(i, np - 1) + h.at(i, np - 2)) * inv2dp;
        out[i] = 1.0 + hq * hq + (2.0 * params.g * h.at(i, np) - Q) * hp * hp;
    }
}

} // namespace

GridField residual_field(const GridField& h, double Q, const VorticitySpec& gamma,
                         const WaveParameters& params) {
    HodographGrid grid(params.nq, params.np, params.p0);
    check_preconditions(h, grid);
    check_no_stagnation(h, grid);
    GridField res(grid.nq, grid.rows());
    auto grow = gamma_rows(gamma, grid);
    kernels::active().interior_residual(
        h.data(), res.data(), grid.nq, grid.rows(), 1.0 / (2.0 * grid.dq),
        1.0 / (2.0 * grid.dp), 1.0 / (grid.dq * grid.dq), 1.0 / (grid.dp * grid.dp),
        1.0 / (4.0 * grid.dq * grid.dp), grow.data());
    surface_residual_row(h, Q, params, grid, res.row(grid.np));
    return res;
}

GridField residual_field_precise(const GridField& h, double Q, const VorticitySpec& gamma,
                                 const WaveParameters& params) {
    HodographGrid grid(params.nq, params.np, params.p0);
    check_preconditions(h, grid);
    check_no_stagnation(h, grid);
    GridField res(grid.nq, grid.rows());
    auto grow = gamma_rows(gamma, grid);
    const int nq = grid.nq, np = grid.np;
    const long double inv2dq = 0.5L / grid.dq;
    const long double inv2dp = 0.5L / grid.dp;
    const long double invdq2 = 1.0L / (static_cast<long double>(grid.dq) * grid.dq);
    const long double invdp2 = 1.0L / (static_cast<long double>(grid.dp) * grid.dp);
    const long double inv4 = 0.25L / (static_cast<long double>(grid.dq) * grid.dp);
    for (int j = 1; j < np; ++j) {
        const long double gj = grow[j];
        for (int i = 0; i < nq; ++i) {
            int im = (i + nq - 1) % nq, ip = (i + 1) % nq;
            long double c0 = h.at(i, j), cm = h.at(im, j), cp = h.at(ip, j);
            long double d0 = h.at(i, j - 1), dm = h.at(im, j - 1), dp1 = h.at(ip, j - 1);
            long double u0 = h.at(i, j + 1), um = h.at(im, j + 1), up = h.at(ip, j + 1);
            long double hq = (cp - cm) * inv2dq;
            long double hp = (u0 - d0) * inv2dp;
            long double hpp = ((u0 + d0) - 2.0L * c0) * invdp2;
            long double hqq = ((cp + cm) - 2.0L * c0) * invdq2;
            long double hpq = ((up - um) - (dp1 - dm)) * inv4;
            long double F = (1.0L + hq * hq) * hpp - 2.0L * hp * hq * hpq + hp * hp * hqq +
                            gj * hp * hp * hp;
            res.at(i, j) = static_cast<double>(F);
        }
    }
    for (int i = 0; i < nq; ++i) {
        int im = (i + nq - 1) % nq, ip = (i + 1) % nq;
        long double hq = (static_cast<long double>(h.at(ip, np)) - h.at(im, np)) * inv2dq;
        long double hp = (3.0L * static_cast<long double>(h.at(i, np)) -
                          4.0L * static_cast<long double>(h.at(i, np - 1)) + h.at(i, np - 2)) *
                         inv2dp;
        long double G =
            1.0L + hq * hq + (2.0L * static_cast<long double>(params.g) * h.at(i, np) - Q) * hp * hp;
        res.at(i, np) = static_cast<double>(G);
    }
    return res;
}

namespace {

struct HalfSystem {
    const WaveParameters& params;
    HodographGrid grid;
    int M;      // half-period nodes
    int n;      // unknowns: M*np height values + Q
    std::vector<double> grow;

    HalfSystem(const WaveParameters& p, const VorticitySpec& gamma)
        : params(p), grid(p.nq, p.np, p.p0), M(p.nq / 2 + 1), n((p.nq / 2 + 1) * p.np + 1),
          grow(gamma_rows(gamma, grid)) {}

    int unknown(int kappa, int j) const { return (j - 1) * M + kappa; }

    GridField expand(const std::vector<double>& x) const {
        GridField h(grid.nq, grid.rows());
        for (int j = 1; j <= grid.np; ++j)
            for (int i = 0; i < grid.nq; ++i)
                h.at(i, j) = x[unknown(half_index(i, grid.nq), j)];
        return h;
    }

    std::vector<double> fold(const GridField& h, double Q) const {
        std::vector<double> x(n, 0.0);
        for (int j = 1; j <= grid.np; ++j)
            for (int kappa = 0; kappa < M; ++kappa)
                x[unknown(kappa, j)] = h.at(full_index(kappa, grid.nq), j);
        x[n - 1] = Q;
        return x;
    }

    std::vector<double> residual_vector(const GridField& h, const GridField& res,
                                        double a_target) const {
        std::vector<double> F(n, 0.0);
        for (int j = 1; j <= grid.np; ++j)
            for (int kappa = 0; kappa < M; ++kappa)
                F[unknown(kappa, j)] = res.at(full_index(kappa, grid.nq), j);
        F[n - 1] = (h.at(grid.crest_index(), grid.np) - h.at(grid.trough_index(), grid.np)) -
                   2.0 * a_target;
        return F;
    }

    BandedMatrix jacobian(const GridField& h, double Q) const {
        const int np = grid.np, nq = grid.nq;
        const double inv2dq = 1.0 / (2.0 * grid.dq);
        const double inv2dp = 1.0 / (2.0 * grid.dp);
        const double invdq2 = 1.0 / (grid.dq * grid.dq);
        const double invdp2 = 1.0 / (grid.dp * grid.dp);
        const double inv4 = 1.0 / (4.0 * grid.dq * grid.dp);
        // interior stencil spans M+1 indices, the one-sided surface h_p reaches
        // down two p-rows (2M), and the Q column sits within M of the surface rows
        const int kb = 2 * M;
        BandedMatrix J(n, kb, kb);

        for (int j = 1; j <= np; ++j) {
            for (int kappa = 0; kappa < M; ++kappa) {
                const int r = unknown(kappa, j);
                const int i0 = full_index(kappa, nq);
                auto add = [&](int kk, int jj, double w) {
                    if (jj == 0) return; // Dirichlet bed
                    if (kk < 0) kk = -kk;
                    if (kk > M - 1) kk = 2 * (M - 1) - kk;
                    J.add(r, unknown(kk, jj), w);
                };
                if (j < np) {
                    auto hv = [&](int di, int dj) { return dj + j == 0 ? 0.0 : h.atw(i0 + di, j + dj); };
                    const double hc = h.at(i0, j);
                    const double hq = (hv(1, 0) - hv(-1, 0)) * inv2dq;
                    const double hp = (hv(0, 1) - hv(0, -1)) * inv2dp;
                    const double hpp = (hv(0, 1) + hv(0, -1) - 2.0 * hc) * invdp2;
                    const double hqq = (hv(1, 0) + hv(-1, 0) - 2.0 * hc) * invdq2;
                    const double hpq =
                        ((hv(1, 1) - hv(-1, 1)) - (hv(1, -1) - hv(-1, -1))) * inv4;
                    const double gj = grow[j];
                    const double A = 2.0 * hq * hpp - 2.0 * hp * hpq;
                    const double B = -2.0 * hq * hpq + 2.0 * hp * hqq + 3.0 * gj * hp * hp;
                    const double Cc = 1.0 + hq * hq;
                    const double Dq = hp * hp;
                    const double E = -2.0 * hp * hq;
                    add(kappa + 1, j, A * inv2dq + Dq * invdq2);
                    add(kappa - 1, j, -A * inv2dq + Dq * invdq2);
                    add(kappa, j, -2.0 * Dq * invdq2 - 2.0 * Cc * invdp2);
                    add(kappa, j + 1, B * inv2dp + Cc * invdp2);
                    add(kappa, j - 1, -B * inv2dp + Cc * invdp2);
                    add(kappa + 1, j + 1, E * inv4);
                    add(kappa - 1, j + 1, -E * inv4);
                    add(kappa + 1, j - 1, -E * inv4);
                    add(kappa - 1, j - 1, E * inv4);
                } else {
                    const double hc = h.at(i0, np);
                    const double hq = (h.atw(i0 + 1, np) - h.atw(i0 - 1, np)) * inv2dq;
                    const double hp =
                        (3.0 * hc - 4.0 * h.at(i0, np - 1) + h.at(i0, np - 2)) * inv2dp;
                    const double B = 2.0 * (2.0 * params.g * hc - Q) * hp;
                    add(kappa + 1, np, 2.0 * hq * inv2dq);
                    add(kappa - 1, np, -2.0 * hq * inv2dq);
                    add(kappa, np, 2.0 * params.g * hp * hp + B * 3.0 * inv2dp);
                    add(kappa, np - 1, B * -4.0 * inv2dp);
                    add(kappa, np - 2, B * inv2dp);
                    J.add(r, n - 1, -hp * hp);
                }
            }
        }
        // amplitude constraint row
        J.add(n - 1, unknown(0, np), 1.0);
        J.add(n - 1, unknown(M - 1, np), -1.0);
        return J;
    }
};

} // namespace

WaveSolution newton_solve(const GridField& seed, double Q_seed, double a_target,
                          const VorticitySpec& gamma, const WaveParameters& params,
                          NewtonReport* report) {
    params.validate();
    if (a_target < 0.0) throw DomainError("amplitude target must be nonnegative");
    HalfSystem sys(params, gamma);
    {
        // seed must already satisfy the bed condition and evenness
        check_preconditions(seed, sys.grid);
    }
    std::vector<double> x = sys.fold(seed, Q_seed);
    NewtonReport rep;
    double rmax = 0.0;
    const bool precise = params.tol < 5e-12;
    for (int iter = 0;; ++iter) {
        GridField h = sys.expand(x);
        GridField res = precise ? residual_field_precise(h, x[sys.n - 1], gamma, params)
                                : residual_field(h, x[sys.n - 1], gamma, params);
        std::vector<double> F = sys.residual_vector(h, res, a_target);
        rmax = 0.0;
        for (double v : F) rmax = std::max(rmax, std::fabs(v));
        if (iter == 0) rep.initial_residual = rmax;
        rep.final_residual = rmax;
        rep.iterations = iter;
        rep.residual_history.push_back(rmax);
        if (rmax < params.tol) {
            WaveSolution sol;
            sol.params = params;
            sol.grid = sys.grid;
            sol.gamma = gamma;
            sol.h = std::move(h);
            sol.Q = x[sys.n - 1];
            sol.amplitude =
                0.5 * (sol.h.at(sys.grid.crest_index(), params.np) -
                       sol.h.at(sys.grid.trough_index(), params.np));
            if (report) *report = rep;
            return sol;
        }
        if (!std::isfinite(rmax) || rmax > 1e8 * std::max(1.0, rep.initial_residual)) {
            std::ostringstream msg;
            msg << "newton diverged: residual " << rmax << " after " << iter << " iterations";
            throw SolverError(SolverError::Kind::newton_diverged, msg.str());
        }
        if (iter >= params.max_iter) {
            std::ostringstream msg;
            msg << "newton diverged: residual " << rmax << " after " << iter
                << " iterations (max_iter reached)";
            throw SolverError(SolverError::Kind::newton_diverged, msg.str());
        }
        BandedMatrix J = sys.jacobian(h, x[sys.n - 1]);
        if (!J.factor())
            throw SolverError(SolverError::Kind::newton_diverged,
                              "newton diverged: singular Jacobian");
        for (double& v : F) v = -v;
        J.solve(F);
        for (int k = 0; k < sys.n; ++k) x[k] += F[k];
    }
}

BranchState continue_branch(const VorticitySpec& gamma, const WaveParameters& params,
                            const BranchOptions& opts) {
    params.validate();
    BranchState branch;
    branch.bifurcation = find_bifurcation(gamma, params.p0, params.g, opts.k, opts.lambda_lo,
                                          opts.lambda_hi, params.np);
    const double d = branch.bifurcation.profile.depth();
    const double a_max = opts.a_max_rel * d;
    const double da0 = opts.delta_a_rel * d;
    HodographGrid grid(params.nq, params.np, params.p0);

    // laminar solution solved on the discrete system
    {
        GridField seed(grid.nq, grid.rows());
        for (int j = 0; j <= grid.np; ++j)
            for (int i = 0; i < grid.nq; ++i) seed.at(i, j) = branch.bifurcation.profile.H[j];
        NewtonReport rep;
        WaveSolution lam = newton_solve(seed, branch.bifurcation.profile.Q, 0.0, gamma, params, &rep);
        branch.points.push_back({0.0, std::move(lam), rep});
    }
    if (a_max <= 0.0) {
        branch.final_step = 0.0;
        return branch;
    }

    double a = 0.0;
    double da = da0;
    while (a < a_max - 1e-14 * std::max(1.0, d)) {
        double a_next = std::min(a + da, a_max);
        GridField seed(grid.nq, grid.rows());
        double Q_seed;
        if (branch.points.size() < 2) {
            seed = linear_seed(branch.bifurcation, a_next, grid);
            Q_seed = branch.bifurcation.profile.Q;
        } else {
            const BranchPoint& s1 = branch.points[branch.points.size() - 1];
            const BranchPoint& s0 = branch.points[branch.points.size() - 2];
            double w = (a_next - s1.a) / (s1.a - s0.a);
            for (int j = 0; j <= grid.np; ++j)
                for (int i = 0; i < grid.nq; ++i)
                    seed.at(i, j) =
                        s1.sol.h.at(i, j) + w * (s1.sol.h.at(i, j) - s0.sol.h.at(i, j));
            Q_seed = s1.sol.Q + w * (s1.sol.Q - s0.sol.Q);
        }
        try {
            NewtonReport rep;
            WaveSolution sol = newton_solve(seed, Q_seed, a_next, gamma, params, &rep);
            branch.points.push_back({a_next, std::move(sol), rep});
            a = a_next;
        } catch (const SolverError& e) {
            if (e.kind != SolverError::Kind::newton_diverged &&
                e.kind != SolverError::Kind::stagnation_in_iterate)
                throw;
            da *= 0.5;
            ++branch.halvings;
            if (da < da0 / 64.0) break;
        }
    }
    branch.final_step = da;
    if (branch.points.size() < 2)
        throw SolverError(SolverError::Kind::branch_start_failed,
                          "branch start failed: no nontrivial amplitude converged");
    return branch;
}

std::vector<std::string> validate_solution(const WaveSolution& sol) {
    std::vector<std::string> out;
    const HodographGrid& grid = sol.grid;
    GridField res;
    try {
        res = sol.params.tol < 5e-12
                  ? residual_field_precise(sol.h, sol.Q, sol.gamma, sol.params)
                  : residual_field(sol.h, sol.Q, sol.gamma, sol.params);
    } catch (const SolverError& e) {
        out.emplace_back(e.what());
        return out;
    } catch (const DomainError& e) {
        out.emplace_back(e.what());
        return out;
    }
    double rint = 0.0, rsurf = 0.0;
    int wi = 0, wj = 0;
    for (int j = 1; j < grid.np; ++j)
        for (int i = 0; i < grid.nq; ++i)
            if (std::fabs(res.at(i, j)) > rint) {
                rint = std::fabs(res.at(i, j));
                wi = i;
                wj = j;
            }
    for (int i = 0; i < grid.nq; ++i) rsurf = std::max(rsurf, std::fabs(res.at(i, grid.np)));
    if (rint >= sol.params.tol) {
        std::ostringstream s;
        s << "interior residual " << rint << " exceeds tol " << sol.params.tol << " at q="
          << grid.q(wi) << ", p=" << grid.p(wj);
        out.push_back(s.str());
    }
    if (rsurf >= sol.params.tol) {
        std::ostringstream s;
        s << "surface residual " << rsurf << " exceeds tol " << sol.params.tol;
        out.push_back(s.str());
    }
    // single crest at q=0: surface non-increasing on (0, pi)
    const double scale = std::max(1.0, sol.h.max_abs());
    const double band = 1e-12 * scale;
    for (int i = grid.nq / 2; i < grid.nq; ++i) {
        double here = sol.h.at(i, grid.np);
        double next = sol.h.at((i + 1) % grid.nq, grid.np);
        if (next > here + band) {
            std::ostringstream s;
            s << "surface not monotone between crest and trough at q=" << grid.q(i);
            out.push_back(s.str());
            break;
        }
    }
    if (sol.amplitude < -1e-14 * scale) out.emplace_back("negative amplitude");
    return out;
}

double jacobian_fd_error(const GridField& h, double Q, const VorticitySpec& gamma,
                         const WaveParameters& params) {
    HalfSystem sys(params, gamma);
    std::vector<double> x = sys.fold(h, Q);
    const int n = sys.n;
    auto fvec = [&](const std::vector<double>& xx) {
        GridField hh = sys.expand(xx);
        GridField res = residual_field(hh, xx[n - 1], gamma, params);
        return sys.residual_vector(hh, res, 0.0);
    };
    BandedMatrix J = sys.jacobian(sys.expand(x), x[n - 1]);
    double worst = 0.0, scale = 1.0;
    for (int k = 0; k < n; ++k) {
        const double delta = 1e-6 * std::max(1.0, std::fabs(x[k]));
        std::vector<double> xp = x, xm = x;
        xp[k] += delta;
        xm[k] -= delta;
        std::vector<double> Fp = fvec(xp), Fm = fvec(xm);
        for (int r = 0; r < n; ++r) {
            double fd = (Fp[r] - Fm[r]) / (2.0 * delta);
            scale = std::max(scale, std::fabs(fd));
            worst = std::max(worst, std::fabs(fd - J.get(r, k)));
        }
    }
    return worst / scale;
}

GridField refine_seed(const WaveSolution& coarse, const HodographGrid& fine) {
    HodographInterpolant interp(coarse.grid, coarse.h);
    GridField h(fine.nq, fine.rows()); // bed row stays exactly zero
    for (int j = 1; j <= fine.np; ++j) {
        double p = (j == fine.np) ? 0.0 : fine.p(j);
        for (int i = fine.nq / 2; i < fine.nq; ++i) h.at(i, j) = interp.value(fine.q(i), p);
        h.at(0, j) = interp.value(-kPi, p);
        for (int i = 1; i < fine.nq / 2; ++i) h.at(i, j) = h.at(fine.nq - i, j);
    }
    return h;
}

} // namespace vorwave
