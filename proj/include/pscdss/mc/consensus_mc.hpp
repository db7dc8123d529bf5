#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pscdss/analytics/stability.hpp"
#include "pscdss/mc/outage_mc.hpp"
#include "pscdss/mc/rng.hpp"

namespace pscdss::mc {

namespace detail {

// Per-trial uniforms, drawn once so sweeps over fault probabilities can
// reuse them: thresholding the same draws makes the empirical curves
// exactly monotone in pf and lets dominance checks compare like with like.
struct FaultDraws {
    double regulator = 0.0;
    std::vector<double> ground;     // Ng - 1 entries
    std::vector<double> satellite;  // Ns entries
    std::vector<double> other_reg;  // M - 1 entries

    static FaultDraws make(Rng& rng, int m_regions, int ng, int ns) {
        FaultDraws d;
        d.regulator = rng.uniform();
        d.ground.resize(ng - 1);
        for (auto& u : d.ground) u = rng.uniform();
        d.satellite.resize(ns);
        for (auto& u : d.satellite) u = rng.uniform();
        d.other_reg.resize(m_regions - 1);
        for (auto& u : d.other_reg) u = rng.uniform();
        return d;
    }

    bool success(double pf_g, double pf_s, int m_regions, int ng, int ns) const {
        int g = 0;
        for (double u : ground) g += u < pf_g;
        int s = 0;
        for (double u : satellite) s += u < pf_s;
        int j = 0;
        for (double u : other_reg) j += u < pf_g;
        return analytics::consensus_round_succeeds(g, regulator < pf_g, s, j,
                                                   m_regions, ng, ns);
    }
};

}  // namespace detail

// Empirical consensus success rate over independent fault masks. When
// mean_ns is set, the satellite count is redrawn Poisson per trial
// (dynamic topology: every visible satellite participates).
inline Estimate estimate_ps_empirical(double pf_g, double pf_s, int m_regions,
                                      int ng, int ns, std::uint64_t trials,
                                      std::uint64_t seed, std::uint64_t stream = 2,
                                      std::optional<double> mean_ns = {}) {
    std::uint64_t successes = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, stream, t);
        const int ns_trial =
            mean_ns ? static_cast<int>(rng.poisson(*mean_ns)) : ns;
        const auto draws = detail::FaultDraws::make(rng, m_regions, ng, ns_trial);
        successes += draws.success(pf_g, pf_s, m_regions, ng, ns_trial);
    }
    Estimate e;
    e.value = static_cast<double>(successes) / static_cast<double>(trials);
    e.stderr_ = std::sqrt(std::max(e.value * (1.0 - e.value), 1e-12) /
                          static_cast<double>(trials));
    return e;
}

// Curve estimator with common random numbers across the whole
// (pf_g, pf_s) grid: result[a][b] is the estimate at
// (pf_g_values[a], pf_s_values[b]).
inline std::vector<std::vector<Estimate>> estimate_ps_curves(
    const std::vector<double>& pf_g_values, const std::vector<double>& pf_s_values,
    int m_regions, int ng, int ns, std::uint64_t trials, std::uint64_t seed,
    std::uint64_t stream = 3) {
    std::vector<std::vector<std::uint64_t>> hits(
        pf_g_values.size(), std::vector<std::uint64_t>(pf_s_values.size(), 0));
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, stream, t);
        const auto draws = detail::FaultDraws::make(rng, m_regions, ng, ns);
        for (std::size_t a = 0; a < pf_g_values.size(); ++a) {
            for (std::size_t b = 0; b < pf_s_values.size(); ++b) {
                hits[a][b] +=
                    draws.success(pf_g_values[a], pf_s_values[b], m_regions, ng, ns);
            }
        }
    }
    std::vector<std::vector<Estimate>> out(pf_g_values.size());
    for (std::size_t a = 0; a < pf_g_values.size(); ++a) {
        out[a].resize(pf_s_values.size());
        for (std::size_t b = 0; b < pf_s_values.size(); ++b) {
            Estimate e;
            e.value = static_cast<double>(hits[a][b]) / static_cast<double>(trials);
            e.stderr_ = std::sqrt(std::max(e.value * (1.0 - e.value), 1e-12) /
                                  static_cast<double>(trials));
            out[a][b] = e;
        }
    }
    return out;
}

}  // namespace pscdss::mc
