#include <doctest.h>

#include <cmath>

#include "pscdss/analytics/quadrature.hpp"
#include "support/oracles.hpp"

using pscdss::analytics::integrate;
using pscdss::analytics::nth_derivative;
using pscdss::analytics::QuadratureError;

TEST_CASE("polynomials are exact for a single panel") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return 3.0 * x * x * x - x; }, -2.0, 5.0) ==
          doctest::Approx(3.0 / 4.0 * (625.0 - 16.0) - 0.5 * (25.0 - 4.0)).epsilon(1e-13));
}

TEST_CASE("transcendental integrands hit the absolute tolerance") {
    const double got = integrate([](double x) { return std::exp(-x) * std::sin(8.0 * x); },
                                 0.0, 10.0, 1e-10);
    const double want = oracles::simpson(
        [](double x) { return std::exp(-x) * std::sin(8.0 * x); }, 0.0, 10.0, 200000);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("degenerate and reversed ranges") {
    CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("non-convergence reports the achieved tolerance") {
    // near-singular integrand with a starvation budget
    try {
        integrate([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0, 1.0, 1e-14, 4);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.achieved_tolerance > 1e-14);
    }
}

TEST_CASE("Richardson central differences for smooth functions") {
    auto f = [](double x) { return std::exp(0.5 * x); };
    CHECK(nth_derivative(f, 1.3, 0) == doctest::Approx(f(1.3)));
    CHECK(nth_derivative(f, 1.3, 1) == doctest::Approx(0.5 * f(1.3)).epsilon(1e-8));
    CHECK(nth_derivative(f, 1.3, 2) == doctest::Approx(0.25 * f(1.3)).epsilon(1e-6));
    CHECK(nth_derivative(f, 1.3, 3) == doctest::Approx(0.125 * f(1.3)).epsilon(1e-4));
}

TEST_CASE("derivative Richardson consistency at two step scales") {
    // the k-th derivative estimate must agree with a half-step estimate to
    // relative 1e-5 for k <= 3 (the consistency the outage expansion relies on)
    auto chi_like = [](double s) { return std::exp(-0.8 * s + 0.1 * s * s / (1.0 + s)); };
    for (int k = 1; k <= 3; ++k) {
        const double at = 0.9;
        const double d_full = nth_derivative(chi_like, at, k);
        // re-evaluate with the function pre-scaled so the internal step halves
        auto half = [&](double s) { return chi_like(at + 0.5 * (s - at)); };
        const double d_half = nth_derivative(half, at, k) * std::pow(2.0, k);
        CHECK(d_full == doctest::Approx(d_half).epsilon(1e-5));
    }
}
