#include <doctest.h>

#include <cmath>

#include "pscdss/analytics/stability.hpp"
#include "pscdss/mc/consensus_mc.hpp"
#include "pscdss/mc/rng.hpp"
#include "pscdss/params.hpp"
#include "support/oracles.hpp"

using namespace pscdss;
using namespace pscdss::analytics;

TEST_CASE("all-healthy network always succeeds") {
    CHECK(ps_semi_analytic(0.0, 0.0, 3, 2, 1) == 1.0);
    CHECK(ps_semi_analytic(0.0, 0.0, 60, 40, 20) == 1.0);
}

TEST_CASE("hand-enumerated small case") {
    // Ng=2, Ns=1, M=3, pf = 0.5 both: 7 successful patterns out of 32
    CHECK(ps_semi_analytic(0.5, 0.5, 3, 2, 1) == doctest::Approx(7.0 / 32.0).epsilon(1e-14));
}

TEST_CASE("formula equals exhaustive pattern enumeration") {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int ng = 1; ng <= 4; ++ng) {
        for (int ns = 0; ns <= 3; ++ns) {
            for (int m : {1, 2, 3, 5}) {
                for (double pg : grid) {
                    for (double ps : grid) {
                        const double formula = ps_semi_analytic(pg, ps, m, ng, ns);
                        const double brute = oracles::ps_enumeration(pg, ps, m, ng, ns);
                        CHECK(std::abs(formula - brute) <= 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("success rate is non-increasing in both fault probabilities") {
    for (double pg = 0.0; pg <= 1.0; pg += 0.2) {
        double prev = 2.0;
        for (double ps = 0.0; ps <= 1.0; ps += 0.1) {
            const double v = ps_semi_analytic(pg, ps, 11, 10, 8);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
    for (double ps = 0.0; ps <= 1.0; ps += 0.2) {
        double prev = 2.0;
        for (double pg = 0.0; pg <= 1.0; pg += 0.1) {
            const double v = ps_semi_analytic(pg, ps, 11, 10, 8);
            CHECK(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("reference population: low ground-fault curve dominates") {
    // M=60, Ng=40, Ns=20
    double prev_low = 2.0, prev_high = 2.0;
    for (double ps = 0.0; ps <= 1.0; ps += 0.125) {
        const double low = ps_semi_analytic(0.03, ps, 60, 40, 20);
        const double high = ps_semi_analytic(0.2, ps, 60, 40, 20);
        CHECK(low >= high - 1e-12);
        CHECK(low <= prev_low + 1e-12);
        CHECK(high <= prev_high + 1e-12);
        prev_low = low;
        prev_high = high;
    }
    // the paper's headline: at pf_g = 0.03 the system still stands at
    // satellite fault probability 0.7
    CHECK(ps_semi_analytic(0.03, 0.7, 60, 40, 20) > 0.9);
    CHECK(ps_semi_analytic(0.2, 0.3, 60, 40, 20) > 0.9);
}

TEST_CASE("fault composition from path outages") {
    const auto a = compose_fault_probs(0.3, 0.2, 1.0, 1.0);
    CHECK(a.pf_g == doctest::Approx(0.3));
    CHECK(a.pf_s == doctest::Approx(0.2));
    const auto b = compose_fault_probs(0.9, 0.9, 0.0, 0.5);
    CHECK(b.pf_g == 0.0);
    CHECK(b.pf_s == doctest::Approx(0.45));
    CHECK_THROWS_AS(compose_fault_probs(1.5, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("closed form is the literal composition") {
    mc::Rng rng(31337);
    for (int i = 0; i < 10; ++i) {
        SystemParams p;
        p.rs_m = p.re_m + rng.uniform(300e3, 1200e3);
        p.lambda_s = std::pow(10.0, rng.uniform(-13.5, -12.0));
        p.lambda_g = std::pow(10.0, rng.uniform(-13.5, -12.0));
        p.pout_wl = rng.uniform(0.0, 1.0);
        p.pout_isl = rng.uniform(0.0, 1.0);
        StabilityInputs in;
        in.gamma_dl = db_to_linear(rng.uniform(-5.0, 5.0));
        in.gamma_ul = db_to_linear(rng.uniform(-5.0, 5.0));
        in.geom = derive_geometry(p);
        in.channel = derive_channel(p);
        in.budget_dl = derive_budget_dl(p);
        in.budget_ul = derive_budget_ul(p);
        in.pout_wl = p.pout_wl;
        in.pout_isl = p.pout_isl;
        in.m_regions = 5 + i;
        in.ng = 6;
        in.ns = 7;

        const double pipeline = ps_closed_form(in);
        const double pout_dl = outage_probability(in.gamma_dl, in.geom,
                                                  LinkDirection::Downlink,
                                                  in.channel, in.budget_dl);
        const double pout_ul = outage_probability(in.gamma_ul, in.geom,
                                                  LinkDirection::Uplink, in.channel,
                                                  in.budget_ul);
        const auto pf = compose_fault_probs(pout_dl, pout_ul, in.pout_wl, in.pout_isl);
        const double composed = ps_semi_analytic(pf.pf_g, pf.pf_s, in.m_regions, in.ng, in.ns);
        CHECK(std::abs(pipeline - composed) <= 1e-9);
    }
}

TEST_CASE("fully redundant wired paths make consensus certain") {
    SystemParams p;
    StabilityInputs in;
    in.gamma_dl = in.gamma_ul = 1.0;
    in.geom = derive_geometry(p);
    in.channel = derive_channel(p);
    in.budget_dl = derive_budget_dl(p);
    in.budget_ul = derive_budget_ul(p);
    in.pout_wl = 0.0;
    in.pout_isl = 0.0;
    in.m_regions = 4;
    in.ng = 5;
    in.ns = 3;
    CHECK(ps_closed_form(in) == 1.0);
}

TEST_CASE("empirical estimator agrees with the formula") {
    const double analytic = ps_semi_analytic(0.1, 0.3, 5, 4, 3);
    const auto mc = mc::estimate_ps_empirical(0.1, 0.3, 5, 4, 3, 100000, 555);
    CHECK(mc.within_3_sigma(analytic));

    CHECK(mc::estimate_ps_empirical(0.0, 0.0, 5, 4, 3, 1000, 556).value == 1.0);
    CHECK(mc::estimate_ps_empirical(1.0, 1.0, 5, 4, 3, 1000, 557).value == 0.0);
}

TEST_CASE("common-random-number curves are exactly monotone") {
    const std::vector<double> pf_g{0.03, 0.2};
    std::vector<double> pf_s;
    for (int i = 0; i <= 10; ++i) pf_s.push_back(i / 10.0);
    const auto curves = mc::estimate_ps_curves(pf_g, pf_s, 7, 5, 4, 20000, 558);
    for (std::size_t b = 0; b < pf_s.size(); ++b) {
        CHECK(curves[0][b].value >= curves[1][b].value);  // dominance
        if (b > 0) {
            CHECK(curves[0][b].value <= curves[0][b - 1].value);
            CHECK(curves[1][b].value <= curves[1][b - 1].value);
        }
    }
}

TEST_CASE("poisson-mixed satellite population stays a probability") {
    const double v = ps_semi_analytic_poisson_ns(0.1, 0.2, 10, 15, 5.3);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    // degenerate mean: only the Ns = 0 term, which can never relay
    CHECK(ps_semi_analytic_poisson_ns(0.0, 0.0, 10, 15, 0.0) == 0.0);
}
