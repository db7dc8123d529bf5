#include <doctest.h>

#include <cmath>

#include "pscdss/analytics/hyp2f1.hpp"
#include "support/oracles.hpp"

using pscdss::analytics::hyp2f1;

TEST_CASE("2F1 at z = 0 is the empty series") {
    CHECK(hyp2f1(0.3, 7.0, 1.5, 0.0) == 1.0);
    CHECK(hyp2f1(2.0, 3.0, 4.0, 0.0) == 1.0);
}

TEST_CASE("2F1(1,1;2;-1) = ln 2") {
    CHECK(hyp2f1(1.0, 1.0, 2.0, -1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("2F1(1,1;2;z) = -ln(1-z)/z on both series branches") {
    for (double z : {-0.3, 0.2, -0.95, -8.0}) {
        CHECK(hyp2f1(1.0, 1.0, 2.0, z) ==
              doctest::Approx(-std::log1p(-z) / z).epsilon(1e-11));
    }
}

TEST_CASE("generic arguments against the extended-precision series oracle") {
    const double got = hyp2f1(0.5, 1.5, 2.5, -3.7);
    const double want = static_cast<double>(oracles::hyp2f1_series(0.5L, 1.5L, 2.5L, -3.7L));
    CHECK(got == doctest::Approx(want).epsilon(1e-10));

    for (double z : {-0.49, -0.7, -2.0, -45.0, 0.3}) {
        const double v = hyp2f1(0.8, 2.2, 3.9, z);
        const double w = static_cast<double>(
            oracles::hyp2f1_series(0.8L, 2.2L, 3.9L, static_cast<long double>(z), 2000));
        CHECK(v == doctest::Approx(w).epsilon(1e-10));
    }
}

TEST_CASE("interference family (m, m+1; m+2; -u) matches the oracle") {
    for (int m : {1, 2, 3, 5}) {
        for (double u : {1e-4, 0.3, 1.0, 7.5, 120.0}) {
            const double got = hyp2f1(m, m + 1.0, m + 2.0, -u);
            const double want = static_cast<double>(oracles::hyp2f1_series(
                m, m + 1.0L, m + 2.0L, static_cast<long double>(-u), 4000));
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("interference family stays finite and sane for huge |z|") {
    // large-argument regime used by the Laplace transform near s -> 0
    for (double u : {1e6, 1e10, 1e13}) {
        const double v = hyp2f1(1.0, 2.0, 3.0, -u);
        // 2F1(1,2;3;-u) = 2 (u - log1p(u)) / u^2
        const double want = 2.0 * (u - std::log1p(u)) / (u * u);
        CHECK(v == doctest::Approx(want).epsilon(1e-9));
        CHECK(v > 0.0);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.5), std::domain_error);
    // z -> 1 from below with generic parameters: series cannot converge
    CHECK_THROWS_AS(hyp2f1(0.5, 2.5, 1.5, 0.999999999), std::domain_error);
}
