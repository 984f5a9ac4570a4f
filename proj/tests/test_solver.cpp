#include <doctest.h>

#include "vorwave/errors.hpp"
#include "vorwave/fields.hpp"
#include "vorwave/solver.hpp"

#include <cmath>

using namespace vorwave;

namespace {

WaveParameters small_params(int nq = 64, int np = 32, double tol = 1e-12) {
    WaveParameters p;
    p.nq = nq;
    p.np = np;
    p.tol = tol;
    return p;
}

BranchState irrotational_branch(int nq, int np, double a_max_rel, double da_rel) {
    WaveParameters params = small_params(nq, np, 1e-11);
    VorticitySpec gamma({}, 1.0);
    BranchOptions opts;
    opts.a_max_rel = a_max_rel;
    opts.delta_a_rel = da_rel;
    opts.lambda_lo = 0.1;
    opts.lambda_hi = 1.0;
    return continue_branch(gamma, params, opts);
}

} // namespace

TEST_SUITE("hodograph-solver") {

TEST_CASE("laminar field has machine-zero residual and self-consistent Q") {
    WaveParameters params = small_params();
    for (auto coeffs : {std::vector<double>{}, std::vector<double>{-0.3}}) {
        VorticitySpec gamma(coeffs, 1.0);
        LaminarProfile prof = solve_laminar(gamma, params.p0, 1.0, params.g, params.np);
        HodographGrid grid(params.nq, params.np, params.p0);
        GridField seed(grid.nq, grid.rows());
        for (int j = 0; j <= grid.np; ++j)
            for (int i = 0; i < grid.nq; ++i) seed.at(i, j) = prof.H[j];
        NewtonReport rep;
        WaveSolution sol = newton_solve(seed, prof.Q, 0.0, gamma, params, &rep);
        CHECK(rep.final_residual < 1e-12);
        CHECK(sol.amplitude == doctest::Approx(0.0).epsilon(1e-14));
        // Q restates the discrete surface condition: 2 g h(0) + 1/h_p(0)^2
        GridField hp = diff_p(sol.h, grid);
        double q_self = 2.0 * params.g * sol.h.at(0, grid.np) +
                        1.0 / (hp.at(0, grid.np) * hp.at(0, grid.np));
        CHECK(std::fabs(sol.Q - q_self) < 1e-10);
        CHECK(validate_solution(sol).empty());
    }
}

TEST_CASE("residual field rejects evenness and bottom violations") {
    WaveParameters params = small_params();
    VorticitySpec gamma({}, 1.0);
    HodographGrid grid(params.nq, params.np, params.p0);
    GridField h(grid.nq, grid.rows());
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 0; i < grid.nq; ++i) h.at(i, j) = grid.p(j) + 1.0;

    GridField odd = h;
    for (int j = 1; j <= grid.np; ++j)
        for (int i = 0; i < grid.nq; ++i) odd.at(i, j) += 0.01 * std::sin(grid.q(i));
    CHECK_THROWS_AS(residual_field(odd, 2.0 * params.g + 1.0, gamma, params), DomainError);

    GridField lifted = h;
    for (int i = 0; i < grid.nq; ++i) lifted.at(i, 0) = 1e-3;
    CHECK_THROWS_AS(residual_field(lifted, 2.0 * params.g + 1.0, gamma, params), DomainError);

    // exact laminar: residual at round-off
    GridField res = residual_field(h, 2.0 * params.g + 1.0, gamma, params);
    CHECK(res.max_abs() < 1e-12);
}

TEST_CASE("analytic Jacobian matches finite differences") {
    WaveParameters params = small_params(16, 8);
    VorticitySpec gamma({-0.2, 0.1}, 1.0);
    LaminarProfile prof = solve_laminar(gamma, params.p0, 0.9, params.g, params.np);
    HodographGrid grid(params.nq, params.np, params.p0);
    GridField h(grid.nq, grid.rows());
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 0; i < grid.nq; ++i)
            h.at(i, j) = prof.H[j] + (0.02 * std::cos(grid.q(i)) + 0.005 * std::cos(2 * grid.q(i))) *
                                         (static_cast<double>(j) / grid.np);
    for (int j = 0; j <= grid.np; ++j)
        for (int i = 1; i < grid.nq / 2; ++i) h.at(grid.nq / 2 - i, j) = h.at(grid.nq / 2 + i, j);
    for (int i = 0; i < grid.nq; ++i) h.at(i, 0) = 0.0;
    CHECK(jacobian_fd_error(h, prof.Q, gamma, params) < 1e-6);
}

TEST_CASE("newton from the linear seed converges in few iterations") {
    WaveParameters params = small_params(64, 32, 1e-11);
    VorticitySpec gamma({}, 1.0);
    BifurcationPoint bif = find_bifurcation(gamma, params.p0, params.g, 1, 0.1, 1.0, params.np);
    HodographGrid grid(params.nq, params.np, params.p0);
    double a = 0.01 * bif.profile.depth();
    GridField seed = linear_seed(bif, a, grid);

    // seed residual is small: O(eps^2) nonlinearity plus O(eps dp^2) mode error
    GridField res = residual_field(seed, bif.profile.Q, gamma, params);
    CHECK(res.max_abs() < 1e-3);

    NewtonReport rep;
    WaveSolution sol = newton_solve(seed, bif.profile.Q, a, gamma, params, &rep);
    CHECK(rep.iterations <= 8);
    CHECK(rep.final_residual < params.tol);
    CHECK(sol.amplitude == doctest::Approx(a).epsilon(1e-10));
    // wave speed within 1% of the linear prediction 1/lambda*
    PhysicalFrame frame = derive_frame(sol);
    CHECK(std::fabs(frame.c - 1.0 / bif.lambda) / frame.c < 0.01);
}

TEST_CASE("oversized amplitude target fails as a solver error, not a crash") {
    WaveParameters params = small_params(32, 16, 1e-10);
    params.max_iter = 12;
    VorticitySpec gamma({}, 1.0);
    BifurcationPoint bif = find_bifurcation(gamma, params.p0, params.g, 1, 0.1, 1.0, params.np);
    HodographGrid grid(params.nq, params.np, params.p0);
    // regression anchor: half the depth as crest-trough half-range is far past
    // any convergent small-amplitude wave at this grid
    double a = 0.5 * bif.profile.depth();
    GridField seed = linear_seed(bif, a, grid);
    try {
        newton_solve(seed, bif.profile.Q, a, gamma, params, nullptr);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        CHECK((e.kind == SolverError::Kind::stagnation_in_iterate ||
               e.kind == SolverError::Kind::newton_diverged));
    }
}

TEST_CASE("branch continuation produces validated, strictly increasing amplitudes") {
    BranchState br = irrotational_branch(64, 32, 0.02, 0.005);
    CHECK(br.points.size() >= 5); // laminar + 4 steps
    for (size_t k = 0; k < br.points.size(); ++k) {
        CHECK(validate_solution(br.points[k].sol).empty());
        if (k > 0) CHECK(br.points[k].a > br.points[k - 1].a);
        CHECK(br.points[k].newton.iterations <= 8);
    }
    CHECK(br.points.back().a ==
          doctest::Approx(0.02 * br.bifurcation.profile.depth()).epsilon(1e-12));
}

TEST_CASE("continuation halves the step where plain increments fail") {
    WaveParameters params = small_params(32, 16, 1e-10);
    params.max_iter = 15;
    VorticitySpec gamma({}, 1.0);
    BranchOptions opts;
    opts.a_max_rel = 0.6;
    opts.delta_a_rel = 0.15; // too coarse for direct steps at this amplitude
    opts.lambda_lo = 0.1;
    opts.lambda_hi = 1.0;
    BranchState br = continue_branch(gamma, params, opts);
    CHECK(br.halvings >= 1);
    CHECK(br.points.size() >= 4);
    CHECK(br.final_step >= 0.15 * br.bifurcation.profile.depth() / 64.0);
    for (const auto& bp : br.points) CHECK(validate_solution(bp.sol).empty());
}

TEST_CASE("a_max = 0 yields the laminar-only branch") {
    BranchState br = irrotational_branch(32, 16, 0.0, 0.005);
    CHECK(br.points.size() == 1);
    CHECK(br.points[0].a == 0.0);
}

TEST_CASE("rotational branch exists at small amplitude") {
    WaveParameters params = small_params(64, 32, 1e-11);
    VorticitySpec gamma({-0.1}, 1.0);
    BranchOptions opts;
    opts.a_max_rel = 0.01;
    opts.delta_a_rel = 0.005;
    opts.lambda_lo = 0.1;
    opts.lambda_hi = 1.5;
    BranchState br = continue_branch(gamma, params, opts);
    CHECK(br.points.size() >= 3);
    CHECK(validate_solution(br.points.back().sol).empty());
}

TEST_CASE("validation names the violation on a corrupted field") {
    BranchState br = irrotational_branch(32, 16, 0.005, 0.005);
    WaveSolution bad = br.points.back().sol;
    int i = 5, j = 8;
    bad.h.at(i, j) += 1e-3;
    bad.h.at(bad.grid.nq - i, j) += 1e-3; // keep evenness so the residual check fires
    auto violations = validate_solution(bad);
    REQUIRE(!violations.empty());
    CHECK(violations.front().find("residual") != std::string::npos);
}

TEST_CASE("surface heights converge at second order under grid doubling") {
    BranchState c0 = irrotational_branch(32, 16, 0.01, 0.005);
    double a = c0.points.back().a;
    VorticitySpec gamma({}, 1.0);

    auto solve_fine = [&](const WaveSolution& coarse, int nq, int np) {
        WaveParameters params = small_params(nq, np, 1e-11);
        HodographGrid fine(nq, np, params.p0);
        GridField seed = refine_seed(coarse, fine);
        return newton_solve(seed, coarse.Q, a, gamma, params, nullptr);
    };
    WaveSolution s32 = c0.points.back().sol;
    WaveSolution s64 = solve_fine(s32, 64, 32);
    WaveSolution s128 = solve_fine(s64, 128, 64);

    auto surface_diff = [](const WaveSolution& c, const WaveSolution& f) {
        double m = 0.0;
        for (int i = 0; i < c.grid.nq; ++i)
            m = std::max(m, std::fabs(c.h.at(i, c.grid.np) - f.h.at(2 * i, f.grid.np)));
        return m;
    };
    double e1 = surface_diff(s32, s64);
    double e2 = surface_diff(s64, s128);
    CHECK(e1 / e2 > 3.0);
    CHECK(e1 / e2 < 5.0);
}

TEST_CASE("wave speed approaches the bifurcation speed quadratically in amplitude") {
    BranchState br = irrotational_branch(64, 32, 0.02, 0.005);
    REQUIRE(br.points.size() >= 5);
    // points at amplitudes a, 2a, 4a: second differences of c cancel the
    // baseline and isolate the quadratic term, so the ratio is close to 4
    double ca = derive_frame(br.points[1].sol).c;  // a
    double c2a = derive_frame(br.points[2].sol).c; // 2a
    double c4a = derive_frame(br.points[4].sol).c; // 4a
    CHECK(br.points[2].a == doctest::Approx(2.0 * br.points[1].a));
    CHECK(br.points[4].a == doctest::Approx(4.0 * br.points[1].a));
    double ratio = (c4a - c2a) / (c2a - ca);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("newton solve is bitwise reproducible") {
    BranchState a = irrotational_branch(32, 16, 0.01, 0.005);
    BranchState b = irrotational_branch(32, 16, 0.01, 0.005);
    REQUIRE(a.points.size() == b.points.size());
    const GridField& ha = a.points.back().sol.h;
    const GridField& hb = b.points.back().sol.h;
    for (int j = 0; j < ha.rows(); ++j)
        for (int i = 0; i < ha.nq(); ++i) CHECK(ha.at(i, j) == hb.at(i, j));
    CHECK(a.points.back().sol.Q == b.points.back().sol.Q);
}

} // TEST_SUITE
