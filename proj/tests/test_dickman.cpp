#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "primecouple/dickman.hpp"
#include "primecouple/quadrature.hpp"

using namespace primecouple;

TEST_CASE("analytic range") {
    CHECK(dickman_rho(0.0) == 1.0);
    CHECK(dickman_rho(0.3) == 1.0);
    CHECK(dickman_rho(1.0) == 1.0);
    CHECK(dickman_rho(1.5) == doctest::Approx(1.0 - std::log(1.5)).epsilon(1e-14));
    CHECK(dickman_rho(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS(dickman_rho(-0.5));
}

TEST_CASE("frozen values past the analytic range") {
    CHECK(std::abs(dickman_rho(3.0) - 0.0486083883) <= 1e-9);
    CHECK(std::abs(dickman_rho(4.0) - 0.0049109256) <= 1e-9);
}

TEST_CASE("delay equation holds through the solver") {
    // rho(b) - rho(a) = -int_a^b rho(u-1)/u du, checked by Simpson refinement
    for (double a : {2.0, 3.0}) {
        double b = a + 1.0;
        const int steps = 1 << 12;
        double h = (b - a) / steps;
        double acc = 0;
        for (int i = 0; i < steps; ++i) {
            double x0 = a + i * h, x1 = x0 + h, xm = x0 + 0.5 * h;
            double f0 = dickman_rho(x0 - 1) / x0;
            double fm = dickman_rho(xm - 1) / xm;
            double f1 = dickman_rho(x1 - 1) / x1;
            acc += h / 6.0 * (f0 + 4.0 * fm + f1);
        }
        CHECK(std::abs(dickman_rho(b) - dickman_rho(a) + acc) <= 1e-8);
    }
}

TEST_CASE("monotone decay and the far tail") {
    CHECK(dickman_rho(2.5) > dickman_rho(3.5));
    CHECK(dickman_rho(3.5) > dickman_rho(6.0));
    CHECK(dickman_rho(10.0) > 0.0);
    CHECK(dickman_rho(10.0) < 1e-10);
    CHECK(dickman_rho(64.5) == 0.0);
    CHECK(dickman_rho(80.0) == 0.0);
}

TEST_CASE("tolerance levels agree") {
    QuadratureSpec tight;
    QuadratureSpec loose;
    loose.abs_tol = 1e-6;
    loose.rel_tol = 1e-6;
    for (double u : {2.5, 5.0, 8.0}) {
        CHECK(std::abs(dickman_rho(u, tight) - dickman_rho(u, loose)) <= 1e-6);
    }
}
