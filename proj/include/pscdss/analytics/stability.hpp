#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pscdss/analytics/channel.hpp"
#include "pscdss/analytics/geometry.hpp"
#include "pscdss/analytics/outage.hpp"

namespace pscdss::analytics {

namespace detail {

inline double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Binomial pmf in log space; exact at p = 0 and p = 1 so probability-grid
// sweeps that include the endpoints stay finite.
inline double binom_pmf(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    return std::exp(log_choose(n, k) + k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace detail

// Success event for one full two-tier round, given a concrete fault pattern:
//   ground_faults      faulty ground nodes other than the regulator (of Ng-1)
//   regulator_faulty   this region's regulator
//   sat_faults         faulty satellites (of Ns)
//   other_reg_faults   faulty regulators among the other M-1 regions
// The round succeeds iff the intra faults stay within floor(Nr/3), at least
// one satellite survives to relay the block to tier 2, and the tier-2 fault
// budget floor(M/2) covers the faulty voters, the submitting regulator
// included.
inline bool consensus_round_succeeds(int ground_faults, bool regulator_faulty,
                                     int sat_faults, int other_reg_faults,
                                     int m_regions, int ng, int ns) {
    const int intra_faults = ground_faults + (regulator_faulty ? 1 : 0) + sat_faults;
    if (intra_faults > (ng + ns) / 3) return false;
    if (sat_faults >= ns) return false;
    if (other_reg_faults + (regulator_faulty ? 1 : 0) > m_regions / 2) return false;
    return true;
}

// Consensus success rate: the double sum over the healthy-regulator and
// faulty-regulator branches, each weighted by the matching tier-2 budget.
inline double ps_semi_analytic(double pf_g, double pf_s, int m_regions, int ng,
                               int ns) {
    if (!(pf_g >= 0.0 && pf_g <= 1.0 && pf_s >= 0.0 && pf_s <= 1.0)) {
        throw std::invalid_argument("ps_semi_analytic: probabilities in [0,1]");
    }
    if (m_regions < 1 || ng < 1 || ns < 0) {
        throw std::invalid_argument("ps_semi_analytic: M, Ng >= 1, Ns >= 0");
    }
    const int fault_budget = (ng + ns) / 3;
    const int tier2_budget = m_regions / 2;

    double tier2_healthy_reg = 0.0;  // sum_{j<=floor(M/2)}   C(M-1,j) pf_g^j ...
    double tier2_faulty_reg = 0.0;   // sum_{j<=floor(M/2)-1} C(M-1,j) pf_g^j ...
    for (int j = 0; j <= tier2_budget; ++j) {
        const double pj = detail::binom_pmf(m_regions - 1, j, pf_g);
        tier2_healthy_reg += pj;
        if (j <= tier2_budget - 1) tier2_faulty_reg += pj;
    }

    double healthy_branch = 0.0;
    double faulty_branch = 0.0;
    for (int i = 0; i <= fault_budget; ++i) {
        for (int n = 0; n <= std::min(i, ng - 1); ++n) {
            const int s = i - n;
            if (s >= ns) continue;  // all-satellites-faulty: block never reaches tier 2
            const double sat = detail::binom_pmf(ns, s, pf_s);
            healthy_branch += (1.0 - pf_g) * detail::binom_pmf(ng - 1, n, pf_g) * sat;
        }
        if (i == 0) continue;
        for (int n = 1; n <= std::min(i, ng); ++n) {
            const int s = i - n;
            if (s >= ns) continue;
            const double sat = detail::binom_pmf(ns, s, pf_s);
            faulty_branch += pf_g * detail::binom_pmf(ng - 1, n - 1, pf_g) * sat;
        }
    }
    const double ps = healthy_branch * tier2_healthy_reg + faulty_branch * tier2_faulty_reg;
    return std::clamp(ps, 0.0, 1.0);
}

// Node fault probabilities from per-path transmission outages: a node is
// faulty only when both its wireless path and its backup path are out.
struct FaultProbs {
    double pf_g = 0.0;
    double pf_s = 0.0;
};

inline FaultProbs compose_fault_probs(double pout_dl, double pout_ul,
                                      double pout_wl, double pout_isl) {
    for (double p : {pout_dl, pout_ul, pout_wl, pout_isl}) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("compose_fault_probs: probabilities in [0,1]");
        }
    }
    return FaultProbs{pout_dl * pout_wl, pout_ul * pout_isl};
}

struct StabilityInputs {
    double gamma_dl = 1.0;  // linear SINR thresholds
    double gamma_ul = 1.0;
    GeometryParams geom;
    ChannelParams channel;
    LinkBudget budget_dl;
    LinkBudget budget_ul;
    double pout_wl = 1.0;
    double pout_isl = 1.0;
    int m_regions = 10;
    int ng = 15;
    int ns = 20;
};

// End-to-end closed form: the outage expressions feed the fault
// probabilities which feed the success-rate sum. Kept as the literal
// composition so the pipeline == composition identity holds by construction.
inline double ps_closed_form(const StabilityInputs& in) {
    const double pout_dl = outage_probability(in.gamma_dl, in.geom,
                                              LinkDirection::Downlink, in.channel,
                                              in.budget_dl);
    const double pout_ul = outage_probability(in.gamma_ul, in.geom,
                                              LinkDirection::Uplink, in.channel,
                                              in.budget_ul);
    const FaultProbs pf = compose_fault_probs(pout_dl, pout_ul, in.pout_wl, in.pout_isl);
    return ps_semi_analytic(pf.pf_g, pf.pf_s, in.m_regions, in.ng, in.ns);
}

// Dynamic-topology variant: every satellite in the visible cap participates,
// so Ns is Poisson with the cap's mean count. Mixture truncated once the
// remaining tail mass cannot move the result at 1e-12.
inline double ps_semi_analytic_poisson_ns(double pf_g, double pf_s, int m_regions,
                                          int ng, double mean_ns) {
    if (mean_ns < 0.0) throw std::invalid_argument("mean_ns >= 0");
    double pmf = std::exp(-mean_ns);  // P(Ns = 0)
    double cumulative = 0.0;
    double result = 0.0;
    for (int ns = 0; cumulative < 1.0 - 1e-12 && ns < 4096; ++ns) {
        if (ns > 0) pmf *= mean_ns / ns;
        cumulative += pmf;
        if (pmf > 0.0) result += pmf * ps_semi_analytic(pf_g, pf_s, m_regions, ng, ns);
    }
    return result;
}

}  // namespace pscdss::analytics
