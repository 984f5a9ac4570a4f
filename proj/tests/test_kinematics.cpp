#include <doctest.h>

#include "vorwave/errors.hpp"
#include "vorwave/kinematics.hpp"
#include "vorwave/solver.hpp"

#include <cmath>

using namespace vorwave;

namespace {

WaveSolution laminar_solution(const std::vector<double>& coeffs, double lambda, int nq = 64,
                              int np = 32) {
    WaveParameters params;
    params.nq = nq;
    params.np = np;
    params.tol = 1e-12;
    VorticitySpec gamma(coeffs, -params.p0);
    LaminarProfile prof = solve_laminar(gamma, params.p0, lambda, params.g, np);
    HodographGrid grid(nq, np, params.p0);
    GridField seed(grid.nq, grid.rows());
    for (int j = 0; j <= np; ++j)
        for (int i = 0; i < nq; ++i) seed.at(i, j) = prof.H[j];
    return newton_solve(seed, prof.Q, 0.0, gamma, params, nullptr);
}

WaveSolution small_wave(int nq = 64, int np = 32) {
    WaveParameters params;
    params.nq = nq;
    params.np = np;
    params.tol = 1e-11;
    VorticitySpec gamma({}, 1.0);
    BranchOptions opts;
    opts.a_max_rel = 0.01;
    opts.delta_a_rel = 0.005;
    opts.lambda_lo = 0.1;
    opts.lambda_hi = 1.0;
    return continue_branch(gamma, params, opts).points.back().sol;
}

} // namespace

TEST_SUITE("kinematics") {

TEST_CASE("streamlines: bed, surface, and laminar flatness") {
    WaveSolution lam = laminar_solution({}, 1.0);
    PhysicalFrame f = derive_frame(lam);
    FieldSampler fs(lam, f);
    for (double p : {-1.0, -0.63, 0.0}) {
        Streamline s = streamline(fs, p);
        for (size_t k = 0; k < s.sigma.size(); ++k) {
            CHECK(s.sigma[k] == doctest::Approx(p).epsilon(1e-11)); // h = p+1, d = 1
            CHECK(std::fabs(s.slope[k]) < 1e-12);
        }
    }

    WaveSolution wave = small_wave();
    PhysicalFrame wf = derive_frame(wave);
    FieldSampler wfs(wave, wf);
    Streamline bed = streamline(wfs, wave.params.p0);
    for (double y : bed.sigma) CHECK(y == doctest::Approx(-wf.d).epsilon(1e-13));
    Streamline top = streamline(wfs, 0.0);
    for (int i = 0; i < wave.grid.nq; ++i)
        CHECK(top.sigma[i] == doctest::Approx(wf.eta[i]).epsilon(1e-13));
}

TEST_CASE("traversal and drift: laminar closed forms") {
    {
        WaveSolution lam = laminar_solution({}, 1.0);
        FieldSampler fs(lam, derive_frame(lam));
        for (double p : {-1.0, -0.5, 0.0}) {
            DriftResult d = traversal_and_drift(fs, p);
            CHECK(d.tau == doctest::Approx(kTwoPi).epsilon(1e-12)); // c = 1
            CHECK(std::fabs(d.drift) < 1e-11);
        }
    }
    {
        WaveSolution lam = laminar_solution({-0.3}, 1.0, 64, 64);
        FieldSampler fs(lam, derive_frame(lam));
        DriftResult d = traversal_and_drift(fs, 0.0);
        // tau = 2 pi H'(0), c = 1 -> D = 2 pi (H'(0) - 1)
        CHECK(d.tau == doctest::Approx(kTwoPi / std::sqrt(0.4)).epsilon(2e-4));
        CHECK(d.drift > 0.0);
    }
}

TEST_CASE("trajectories in laminar flow: particles stand still") {
    WaveSolution lam = laminar_solution({}, 1.0);
    PhysicalFrame f = derive_frame(lam);
    FieldSampler fs(lam, f);
    Trajectory t = integrate_trajectory(fs, 0.3, -0.4, 2.0 * kTwoPi, 0.0, 1);
    REQUIRE(t.period_complete);
    for (double X : t.X) CHECK(std::fabs(X - 0.3) < 1e-10); // u = 0
    for (double Y : t.Y) CHECK(std::fabs(Y + 0.4) < 1e-12);
    // steady-frame x decreases at rate c = 1
    CHECK(t.tau == doctest::Approx(kTwoPi).epsilon(1e-10));
    CHECK(std::fabs(t.drift) < 1e-9);
}

TEST_CASE("bed is a streamline: trajectories stay at y = -d") {
    WaveSolution wave = small_wave();
    PhysicalFrame f = derive_frame(wave);
    FieldSampler fs(wave, f);
    Trajectory t = integrate_trajectory(fs, 0.0, -f.d, 2.0 * kTwoPi / f.c, 0.0, 1);
    for (double Y : t.Y) CHECK(std::fabs(Y + f.d) < 1e-12);
}

TEST_CASE("quadrature drift equals trajectory drift; psi conserved") {
    WaveSolution wave = small_wave();
    PhysicalFrame f = derive_frame(wave);
    FieldSampler fs(wave, f);
    for (int j : {0, wave.grid.np / 2, wave.grid.np}) {
        double p = wave.grid.p(j);
        double y0 = fs.interpolant().value(0.0, p) - f.d;
        DriftResult q = traversal_and_drift(fs, p);
        Trajectory t = integrate_trajectory(fs, 0.0, y0, 3.0 * kTwoPi / f.c, 0.0, 1);
        REQUIRE(t.period_complete);
        CHECK(std::fabs(q.drift - t.drift) < 1e-6);
        CHECK(t.max_psi_drift / std::fabs(wave.params.p0) < 1e-8);
        CHECK(t.drift > 0.0);
    }
}

TEST_CASE("orbit size grows from bed to surface on small irrotational waves") {
    WaveSolution wave = small_wave();
    PhysicalFrame f = derive_frame(wave);
    FieldSampler fs(wave, f);
    double prev = -1.0;
    for (int j = 0; j <= wave.grid.np; ++j) {
        Streamline s = streamline(fs, wave.grid.p(j));
        double lo = 1e300, hi = -1e300;
        for (double y : s.sigma) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        CHECK(hi - lo >= prev - 1e-12);
        prev = hi - lo;
    }
}

TEST_CASE("Hoelder chain holds on every stream level") {
    WaveSolution wave = small_wave();
    GridField hp = diff_p(wave.h, wave.grid);
    for (int j = 0; j <= wave.grid.np; ++j) {
        std::vector<double> a(wave.grid.nq), b(wave.grid.nq);
        for (int i = 0; i < wave.grid.nq; ++i) {
            a[i] = 1.0 / hp.at(i, j);
            b[i] = hp.at(i, j);
        }
        double ia = integrate_q_half(a.data(), wave.grid.nq, wave.grid.dq);
        double ib = integrate_q_half(b.data(), wave.grid.nq, wave.grid.dq);
        CHECK(ia * ib >= kPi * kPi * (1.0 - 1e-12));
    }
}

TEST_CASE("mass flux equals p0 in physical coordinates") {
    {
        WaveSolution lam = laminar_solution({}, 1.0);
        FieldSampler fs(lam, derive_frame(lam));
        CHECK(mass_flux(fs, 1.234) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    {
        WaveSolution wave = small_wave();
        FieldSampler fs(wave, derive_frame(wave));
        for (double x : {0.0, kPi / 2.0, kPi})
            CHECK(std::fabs(mass_flux(fs, x) - wave.params.p0) < 1e-4);
    }
}

TEST_CASE("trajectory start must lie inside the fluid") {
    WaveSolution wave = small_wave();
    PhysicalFrame f = derive_frame(wave);
    FieldSampler fs(wave, f);
    CHECK_THROWS_AS(integrate_trajectory(fs, 0.0, 0.3, 1.0, 0.0, 1), SolverError);
}

} // TEST_SUITE
