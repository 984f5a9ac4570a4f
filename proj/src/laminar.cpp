#include "vorwave/laminar.hpp"
#include "vorwave/errors.hpp"

#include <cmath>
#include <string>

namespace vorwave {

namespace {

// Antiderivative of gamma evaluated exactly: int_{p0}^{p} gamma(-s) ds.
double gamma_integral_from_bed(const VorticitySpec& gamma, double p0, double p) {
    const auto& c = gamma.coefficients();
    // G(sigma) = int_0^sigma gamma, polynomial; int_{p0}^p gamma(-s) ds = G(-p0) - G(-p).
    auto G = [&](double sigma) {
        double v = 0.0;
        for (size_t i = c.size(); i-- > 0;) v = v * sigma + c[i] / static_cast<double>(i + 1);
        return v * sigma;
    };
    return G(-p0) - G(-p);
}

// First p in (p0, 0] where the squared-slope radicand vanishes, or NaN.
double stagnation_point(const VorticitySpec& gamma, double p0, double lambda) {
    auto radicand = [&](double p) {
        return 1.0 / (lambda * lambda) + 2.0 * gamma_integral_from_bed(gamma, p0, p);
    };
    const int scan = 4096;
    double prev_p = p0, prev_r = radicand(p0);
    for (int k = 1; k <= scan; ++k) {
        double p = p0 + (0.0 - p0) * static_cast<double>(k) / scan;
        double r = radicand(p);
        if (r <= 0.0) {
            double lo = prev_p, hi = p;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (radicand(mid) > 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_p = p;
        prev_r = r;
    }
    (void)prev_r;
    return std::nan("");
}

struct ShootState {
    double H, W, m, mp;
};

// RK4 right-hand side for the profile and the linearized mode together.
ShootState rhs(const VorticitySpec& gamma, double p, const ShootState& s, int k) {
    double gam = gamma.eval(-p);
    double W2 = s.W * s.W;
    ShootState d;
    d.H = s.W;
    d.W = -gam * W2 * s.W;
    d.m = s.mp;
    d.mp = -3.0 * gam * W2 * s.mp + static_cast<double>(k) * static_cast<double>(k) * W2 * s.m;
    return d;
}

ShootState rk4_step(const VorticitySpec& gamma, double p, double dp, const ShootState& s, int k) {
    ShootState k1 = rhs(gamma, p, s, k);
    ShootState s2{s.H + 0.5 * dp * k1.H, s.W + 0.5 * dp * k1.W, s.m + 0.5 * dp * k1.m,
                  s.mp + 0.5 * dp * k1.mp};
    ShootState k2 = rhs(gamma, p + 0.5 * dp, s2, k);
    ShootState s3{s.H + 0.5 * dp * k2.H, s.W + 0.5 * dp * k2.W, s.m + 0.5 * dp * k2.m,
                  s.mp + 0.5 * dp * k2.mp};
    ShootState k3 = rhs(gamma, p + 0.5 * dp, s3, k);
    ShootState s4{s.H + dp * k3.H, s.W + dp * k3.W, s.m + dp * k3.m, s.mp + dp * k3.mp};
    ShootState k4 = rhs(gamma, p + dp, s4, k);
    return ShootState{
        s.H + dp / 6.0 * (k1.H + 2.0 * k2.H + 2.0 * k3.H + k4.H),
        s.W + dp / 6.0 * (k1.W + 2.0 * k2.W + 2.0 * k3.W + k4.W),
        s.m + dp / 6.0 * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m),
        s.mp + dp / 6.0 * (k1.mp + 2.0 * k2.mp + 2.0 * k3.mp + k4.mp),
    };
}

void require_no_stagnation(const VorticitySpec& gamma, double p0, double lambda) {
    double ps = stagnation_point(gamma, p0, lambda);
    if (!std::isnan(ps))
        throw SolverError(SolverError::Kind::laminar_stagnation,
                          "laminar stagnation at p=" + std::to_string(ps) +
                              " (lambda=" + std::to_string(lambda) + ")");
}

// Shoot profile + mode from p0 to 0, sampling every `refine` steps.
void shoot(const VorticitySpec& gamma, double p0, double lambda, int k, int np, int refine,
           std::vector<double>* H_out, std::vector<double>* Hp_out, std::vector<double>* m_out,
           double* m0, double* mp0) {
    require_no_stagnation(gamma, p0, lambda);
    const int nsteps = np * refine;
    const double dp = -p0 / nsteps;
    ShootState s{0.0, lambda, 0.0, 1.0};
    if (H_out) {
        H_out->assign(np + 1, 0.0);
        Hp_out->assign(np + 1, 0.0);
        (*H_out)[0] = 0.0;
        (*Hp_out)[0] = lambda;
    }
    if (m_out) {
        m_out->assign(np + 1, 0.0);
        (*m_out)[0] = 0.0;
    }
    for (int step = 1; step <= nsteps; ++step) {
        double p = p0 + dp * (step - 1);
        s = rk4_step(gamma, p, dp, s, k);
        if (!(s.W > 0.0) || !std::isfinite(s.W))
            throw SolverError(SolverError::Kind::laminar_stagnation,
                              "laminar stagnation at p=" + std::to_string(p + dp));
        if (step % refine == 0) {
            int j = step / refine;
            if (H_out) {
                (*H_out)[j] = s.H;
                (*Hp_out)[j] = s.W;
            }
            if (m_out) (*m_out)[j] = s.m;
        }
    }
    if (m0) *m0 = s.m;
    if (mp0) *mp0 = s.mp;
}

} // namespace

LaminarProfile solve_laminar(const VorticitySpec& gamma, double p0, double lambda, double g,
                             int np, int refine) {
    if (!(lambda > 0.0)) throw DomainError("laminar lambda must be positive");
    if (!(p0 < 0.0)) throw DomainError("p0 must be negative");
    LaminarProfile prof;
    prof.lambda = lambda;
    prof.p0 = p0;
    prof.np = np;
    prof.refine = refine;
    shoot(gamma, p0, lambda, 1, np, refine, &prof.H, &prof.Hp, nullptr, nullptr, nullptr);
    prof.c = 1.0 / lambda;
    double Hp0 = prof.Hp.back();
    prof.Q = 2.0 * g * prof.H.back() + 1.0 / (Hp0 * Hp0);
    return prof;
}

double dispersion_residual(const VorticitySpec& gamma, double p0, double g, int k,
                           double lambda, int np, int refine) {
    if (!(lambda > 0.0)) throw DomainError("dispersion lambda must be positive");
    std::vector<double> H, Hp;
    double m0 = 0.0, mp0 = 0.0;
    shoot(gamma, p0, lambda, k, np, refine, &H, &Hp, nullptr, &m0, &mp0);
    double Hp0 = Hp.back();
    return (g * m0 * Hp0 * Hp0 * Hp0 - mp0) / mp0;
}

BifurcationPoint find_bifurcation(const VorticitySpec& gamma, double p0, double g, int k,
                                  double lambda_lo, double lambda_hi, int np, int refine) {
    const int scan = 64;
    double prev_l = 0.0, prev_r = 0.0;
    bool have_prev = false;
    double lo = 0.0, hi = 0.0;
    bool bracketed = false;
    for (int i = 0; i <= scan; ++i) {
        double l = lambda_lo + (lambda_hi - lambda_lo) * static_cast<double>(i) / scan;
        double r;
        try {
            r = dispersion_residual(gamma, p0, g, k, l, np, refine);
        } catch (const SolverError&) {
            have_prev = false;
            continue;
        }
        if (have_prev && prev_r * r <= 0.0 && (prev_r != 0.0 || r != 0.0)) {
            lo = prev_l;
            hi = l;
            bracketed = true;
            break;
        }
        prev_l = l;
        prev_r = r;
        have_prev = true;
    }
    if (!bracketed)
        throw SolverError(SolverError::Kind::no_bifurcation,
                          "no bifurcation in bracket [" + std::to_string(lambda_lo) + ", " +
                              std::to_string(lambda_hi) + "]");
    double rlo = dispersion_residual(gamma, p0, g, k, lo, np, refine);
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        double mid = 0.5 * (lo + hi);
        double rm = dispersion_residual(gamma, p0, g, k, mid, np, refine);
        if (rlo * rm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            rlo = rm;
        }
    }
    BifurcationPoint bif;
    bif.lambda = 0.5 * (lo + hi);
    double res = dispersion_residual(gamma, p0, g, k, bif.lambda, np, refine);
    if (!(std::fabs(res) < 1e-6))
        throw SolverError(SolverError::Kind::no_bifurcation,
                          "bracket sign change is not a dispersion root (residual=" +
                              std::to_string(res) + ")");
    bif.profile = solve_laminar(gamma, p0, bif.lambda, g, np, refine);
    std::vector<double> m;
    double m0 = 0.0, mp0 = 0.0;
    shoot(gamma, p0, bif.lambda, k, np, refine, &bif.profile.H, &bif.profile.Hp, &m, &m0, &mp0);
    if (!(m0 > 0.0))
        throw SolverError(SolverError::Kind::no_bifurcation,
                          "dispersion eigenfunction has m(0) <= 0");
    for (double& v : m) v /= m0;
    bif.eigenfunction = std::move(m);
    return bif;
}

GridField linear_seed(const BifurcationPoint& bif, double eps, const HodographGrid& grid) {
    GridField h(grid.nq, grid.rows());
    for (int j = 0; j <= grid.np; ++j) {
        double base = bif.profile.H[j];
        double amp = eps * bif.eigenfunction[j];
        for (int i = 0; i < grid.nq; ++i) h.at(i, j) = base + amp * std::cos(grid.q(i));
    }
    // exact evenness: mirror the half-period
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 1; i < grid.nq / 2; ++i) h.at(grid.nq / 2 - i, j) = h.at(grid.nq / 2 + i, j);
    return h;
}

} // namespace vorwave
