#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "vacqkd/quadrature.hpp"

using namespace vacqkd;

TEST_CASE("polynomial and gaussian integrals") {
    auto cubic = integrate([](double x) { return x * x * x - 2.0 * x; }, -1.0, 2.0, 1e-12, 0.0, 100000);
    CHECK(cubic.value == doctest::Approx(0.75).epsilon(1e-12));

    auto gauss = integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 1e-12, 0.0, 1000000);
    CHECK(gauss.value == doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-12));
    CHECK(gauss.error <= 1e-10 * gauss.value);
}

TEST_CASE("tiny bracketed peak") {
    // narrow Gaussian integrated over +/- 8 widths, the way the correlation
    // domains are built: tiny absolute scale, sharply varying integrand
    const double mu = 0.3, sigma = 1e-6;
    auto r = integrate([&](double x) { return std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)); },
                       mu - 8.0 * sigma, mu + 8.0 * sigma, 1e-10, 0.0, 10000000);
    CHECK(r.value == doctest::Approx(sigma * std::sqrt(2.0 * 3.14159265358979323846)).epsilon(1e-9));
}

TEST_CASE("integrable edge growth") {
    // 1/sqrt(x) on (epsilon, 1]
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0, 1e-9, 0.0, 10000000);
    CHECK(r.value == doctest::Approx(2.0 * (1.0 - 1e-6)).epsilon(1e-8));
}

TEST_CASE("budget error carries the running estimate") {
    // heavily oscillatory integrand: the tolerance is unreachable on the
    // allowed number of evaluations
    try {
        integrate([](double x) { return 2.0 + std::sin(1e7 * x); }, 0.0, 1.0, 1e-12, 0.0, 2000);
        FAIL("expected QuadratureBudgetError");
    } catch (const QuadratureBudgetError& e) {
        CHECK(e.evals() <= 2030);
        CHECK(e.estimate() == doctest::Approx(2.0).epsilon(0.2));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("2-D product separates") {
    auto r = integrate_2d([](double u, double k) { return std::exp(-u * u) * std::exp(-2.0 * k * k); },
                          -8.0, 8.0, -8.0, 8.0, 1e-10, 10000000);
    const double expected = std::sqrt(3.14159265358979323846) *
                            std::sqrt(3.14159265358979323846 / 2.0);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("spec validation") {
    QuadratureSpec spec;
    CHECK_NOTHROW(spec.validate());
    spec.rel_tol = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = QuadratureSpec{};
    spec.n_sigma = 2.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
