#include <doctest.h>

#include "vorwave/errors.hpp"
#include "vorwave/grid.hpp"
#include "vorwave/vorticity.hpp"

#include <cmath>
#include <random>

using namespace vorwave;

namespace {

GridField sample(const HodographGrid& g, double (*f)(double, double)) {
    GridField out(g.nq, g.rows());
    for (int j = 0; j <= g.np; ++j)
        for (int i = 0; i < g.nq; ++i) out.at(i, j) = f(g.q(i), g.p(j));
    return out;
}

double max_err(const GridField& a, const HodographGrid& g, double (*f)(double, double)) {
    double m = 0.0;
    for (int j = 0; j <= g.np; ++j)
        for (int i = 0; i < g.nq; ++i) m = std::max(m, std::fabs(a.at(i, j) - f(g.q(i), g.p(j))));
    return m;
}

} // namespace

TEST_SUITE("wave-core") {

TEST_CASE("vorticity evaluation and domain errors") {
    VorticitySpec zero({}, 1.0);
    CHECK(zero.eval(0.5) == 0.0);
    CHECK(zero.is_zero());
    CHECK(zero.nonpositive());

    VorticitySpec cst({-0.3}, 1.0);
    CHECK(cst.eval(0.7) == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(cst.eval_derivative(0.7) == 0.0);
    CHECK(cst.sign() == RangeSign::nonpositive);

    VorticitySpec lin({1.0, -2.0}, 1.0);
    CHECK(lin.eval(0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(lin.eval_derivative(0.25) == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(lin.sign() == RangeSign::mixed);
    CHECK(lin.derivative_sign() == RangeSign::nonpositive);

    CHECK_THROWS_AS(cst.eval(1.5), DomainError);
    CHECK_THROWS_AS(cst.eval(-0.1), DomainError);
}

TEST_CASE("sign flags agree with brute-force dense sampling") {
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(deg(gen) + 1);
        for (double& v : c) v = coef(gen);
        VorticitySpec spec(c, 1.3);
        // independent brute force at a different, denser sampling
        CHECK(spec.sign() == classify_sign(c, 1.3, 4097));
    }
}

TEST_CASE("diff_q: smooth fields, exactness, odd output for even input") {
    HodographGrid g(64, 16, -1.0);
    auto f = sample(g, [](double q, double) { return std::cos(q); });
    GridField d = diff_q(f, g);
    CHECK(max_err(d, g, [](double q, double) { return -std::sin(q); }) < 2.0 * g.dq * g.dq);

    auto c = sample(g, [](double, double) { return 4.2; });
    CHECK(diff_q(c, g).max_abs() == 0.0);

    // antisymmetry across q = 0 for even input
    for (int j = 0; j <= g.np; ++j)
        for (int i = 1; i < g.nq / 2; ++i)
            CHECK(d.at(g.nq / 2 + i, j) == doctest::Approx(-d.at(g.nq / 2 - i, j)).epsilon(1e-13));
}

TEST_CASE("diff_q convergence order by grid doubling") {
    auto worst = [](int nq) {
        HodographGrid g(nq, 8, -1.0);
        auto f = sample(g, [](double q, double) { return std::cos(2.0 * q); });
        GridField d = diff_q(f, g);
        return max_err(d, g, [](double q, double) { return -2.0 * std::sin(2.0 * q); });
    };
    double ratio = worst(64) / worst(128);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("diff_p: exact on quadratics including one-sided rows") {
    HodographGrid g(16, 20, -1.0);
    auto f = sample(g, [](double, double p) { return p * p; });
    GridField d = diff_p(f, g);
    CHECK(max_err(d, g, [](double, double p) { return 2.0 * p; }) < 1e-12);

    auto lin = sample(g, [](double, double p) { return 3.0 * p - 1.0; });
    CHECK(max_err(diff_p(lin, g), g, [](double, double) { return 3.0; }) < 1e-12);
}

TEST_CASE("diff_p boundary rows converge at second order") {
    auto bed_err = [](int np) {
        HodographGrid g(16, np, -1.0);
        auto f = sample(g, [](double, double p) { return p * p * p; });
        GridField d = diff_p(f, g);
        double e = 0.0;
        for (int i = 0; i < g.nq; ++i) {
            e = std::max(e, std::fabs(d.at(i, 0) - 3.0 * g.p(0) * g.p(0)));
            e = std::max(e, std::fabs(d.at(i, g.np) - 3.0 * g.p(g.np) * g.p(g.np)));
        }
        return e;
    };
    double ratio = bed_err(16) / bed_err(32);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("periodic trapezoid quadrature") {
    HodographGrid g(64, 8, -1.0);
    std::vector<double> one(g.nq, 1.0), coss(g.nq), cos2(g.nq);
    for (int i = 0; i < g.nq; ++i) {
        coss[i] = std::cos(g.q(i));
        cos2[i] = std::cos(g.q(i)) * std::cos(g.q(i));
    }
    CHECK(integrate_q_period(one.data(), g.nq, g.dq) == doctest::Approx(kTwoPi).epsilon(1e-14));
    CHECK(std::fabs(integrate_q_period(coss.data(), g.nq, g.dq)) < 1e-13);
    CHECK(integrate_q_period(cos2.data(), g.nq, g.dq) == doctest::Approx(kPi).epsilon(1e-13));
    // half-period of an even function is half the period integral
    CHECK(integrate_q_half(cos2.data(), g.nq, g.dq) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
    WaveParameters p;
    CHECK_NOTHROW(p.validate());
    p.p0 = 0.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p.p0 = -1.0;
    p.nq = 15;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

} // TEST_SUITE
