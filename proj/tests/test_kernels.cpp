#include <doctest.h>

#include "vorwave/grid.hpp"
#include "vorwave/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace vorwave;

namespace {

std::vector<double> random_field(int nq, int rows, uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> f(static_cast<size_t>(nq) * rows);
    for (double& v : f) v = dist(gen);
    return f;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("vector backends reproduce the scalar stencils bit-for-bit") {
    auto backends = kernels::available();
    const auto& ref = kernels::scalar_backend();
    // sizes chosen to exercise vector bodies and scalar tails
    const int sizes[4][2] = {{16, 9}, {30, 12}, {128, 65}, {52, 7}};
    for (const auto& sz : sizes) {
        const int nq = sz[0], rows = sz[1];
        auto f = random_field(nq, rows, 1234u + nq);
        std::vector<double> a(f.size()), b(f.size());
        std::vector<double> grow(rows);
        for (int j = 0; j < rows; ++j) grow[j] = -0.3 + 0.01 * j;

        for (const auto& name : backends) {
            REQUIRE(kernels::select(name));
            const auto& bk = kernels::active();

            ref.diff_q(f.data(), a.data(), nq, rows, 3.17);
            bk.diff_q(f.data(), b.data(), nq, rows, 3.17);
            CHECK(a == b);

            ref.diff_p(f.data(), a.data(), nq, rows, 1.618);
            bk.diff_p(f.data(), b.data(), nq, rows, 1.618);
            CHECK(a == b);

            ref.diff_qq(f.data(), a.data(), nq, rows, 2.5);
            bk.diff_qq(f.data(), b.data(), nq, rows, 2.5);
            CHECK(a == b);

            ref.diff_pp(f.data(), a.data(), nq, rows, 4.25);
            bk.diff_pp(f.data(), b.data(), nq, rows, 4.25);
            CHECK(a == b);

            ref.interior_residual(f.data(), a.data(), nq, rows, 1.1, 2.2, 3.3, 4.4, 5.5,
                                  grow.data());
            bk.interior_residual(f.data(), b.data(), nq, rows, 1.1, 2.2, 3.3, 4.4, 5.5,
                                 grow.data());
            CHECK(a == b);
        }
    }
    kernels::select("auto");
}

TEST_CASE("reduction equivalence within accumulation tolerance") {
    const auto& ref = kernels::scalar_backend();
    for (const auto& name : kernels::available()) {
        REQUIRE(kernels::select(name));
        for (int n : {7, 64, 129, 1000}) {
            auto f = random_field(n, 1, 77u + n);
            double a = ref.reduce_trapezoid(f.data(), n, 0.031);
            double b = kernels::active().reduce_trapezoid(f.data(), n, 0.031);
            CHECK(std::fabs(a - b) <= 1e-13 * n);
        }
    }
    kernels::select("auto");
}

TEST_CASE("backend selection") {
    CHECK(kernels::select("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::select("definitely-not-a-backend"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK(kernels::select("auto"));
}

} // TEST_SUITE
