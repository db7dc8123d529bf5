#pragma once

#include <cmath>
#include <cstdint>

#include "pscdss/analytics/channel.hpp"
#include "pscdss/analytics/geometry.hpp"
#include "pscdss/mc/rng.hpp"
#include "pscdss/mc/sphere.hpp"

namespace pscdss::mc {

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;

    bool within_3_sigma(double reference, double slack = 0.0) const {
        return std::abs(value - reference) <= 3.0 * stderr_ + slack;
    }
};

// Empirical outage for one link direction, straight from the SINR
// definition: serving transmitter is the nearest cap point, every other cap
// point interferes with mitigated gain, channel gains drawn from the same
// integerized gamma the analytic route uses. Empty caps count toward the
// visibility factor (no outage event is scored for them).
inline Estimate simulate_link_outage(double gamma_thr,
                                     const analytics::CapGeometry& cap,
                                     const analytics::ChannelParams& ch,
                                     const analytics::LinkBudget& budget,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::uint64_t stream = 0) {
    const double noise_bar = budget.normalized_noise();
    std::uint64_t outages = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, stream, t);
        const CapSample sample = sample_cap_points(cap, rng);
        if (sample.empty()) continue;
        const double d0 = sample.nearest_distance();
        const double h0 = rng.gamma(ch.alpha_int, ch.beta);
        const double signal = h0 / (d0 * d0);
        double interference = 0.0;
        for (std::size_t i = 0; i < sample.points.size(); ++i) {
            if (static_cast<std::ptrdiff_t>(i) == sample.nearest) continue;
            const double h = rng.gamma(ch.alpha_int, ch.beta);
            interference += budget.mitigation * h / (sample.chord[i] * sample.chord[i]);
        }
        if (signal < gamma_thr * (noise_bar + interference)) ++outages;
    }
    Estimate e;
    e.value = static_cast<double>(outages) / static_cast<double>(trials);
    e.stderr_ = std::sqrt(std::max(e.value * (1.0 - e.value), 1e-12) /
                          static_cast<double>(trials));
    return e;
}

// E[exp(-s I)] over cap realizations with the serving point pinned at d0:
// the direct oracle for the interference Laplace transform.
inline Estimate estimate_laplace(double s, const analytics::CapGeometry& cap,
                                 const analytics::ChannelParams& ch, double g_bar,
                                 double d0, std::uint64_t trials,
                                 std::uint64_t seed, std::uint64_t stream = 1) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng rng(seed, stream, t);
        // interferers: PPP restricted to the annulus (d0, d_max]
        analytics::CapGeometry annulus = cap;
        annulus.d_min = d0;
        const CapSample sample = sample_cap_points(annulus, rng);
        double interference = 0.0;
        for (double d : sample.chord) {
            const double h = rng.gamma(ch.alpha_int, ch.beta);
            interference += g_bar * h / (d * d);
        }
        const double v = std::exp(-s * interference);
        sum += v;
        sum_sq += v * v;
    }
    Estimate e;
    const double n = static_cast<double>(trials);
    e.value = sum / n;
    e.stderr_ = std::sqrt(std::max(sum_sq / n - e.value * e.value, 0.0) / n);
    return e;
}

}  // namespace pscdss::mc
