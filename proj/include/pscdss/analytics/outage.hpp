#pragma once

#include <algorithm>
#include <cmath>

#include "pscdss/analytics/channel.hpp"
#include "pscdss/analytics/geometry.hpp"
#include "pscdss/analytics/lemmas.hpp"
#include "pscdss/analytics/quadrature.hpp"

namespace pscdss::analytics {

namespace detail {

// upsilon(d): the CDF expansion of the integer-shape gamma serving gain,
// with E[I^k e^{-s I}] folded in as (-1)^k L^(k)(s) at s = gamma d^2 / beta.
// For alpha_int = 1 this degenerates to L(s) itself and no differentiation
// happens.
inline double upsilon(double gamma_thr, double d, const CapGeometry& cap,
                      const ChannelParams& ch, double g_bar, double noise_bar) {
    const double s = gamma_thr * d * d / ch.beta;
    auto laplace = [&](double x) {
        return laplace_interference(std::max(x, 0.0), cap, ch, g_bar, d);
    };
    if (ch.alpha_int == 1) return laplace(s);

    double total = 0.0;
    double s_pow = 1.0;       // s^m
    double factorial = 1.0;   // m!
    for (int m = 0; m < ch.alpha_int; ++m) {
        if (m > 0) {
            s_pow *= s;
            factorial *= m;
        }
        double inner = 0.0;
        double binom = 1.0;  // C(m, k)
        for (int k = 0; k <= m; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double deriv = nth_derivative(laplace, s, k);
            inner += binom * std::pow(noise_bar, m - k) * sign * deriv;
            binom *= static_cast<double>(m - k) / (k + 1);
        }
        total += s_pow / factorial * inner;
    }
    return total;
}

}  // namespace detail

// eta = E_D[ exp(-s sigma_bar^2) * upsilon(D) ] over the conditional
// nearest-distance law: the probability the serving SINR clears gamma_thr
// given at least one visible transmitter.
inline double conditional_success(double gamma_thr, const CapGeometry& cap,
                                  const ChannelParams& ch, double g_bar,
                                  double noise_bar, double abs_tol = 1e-8) {
    auto integrand = [&](double d) {
        const double s = gamma_thr * d * d / ch.beta;
        return std::exp(-s * noise_bar) *
               detail::upsilon(gamma_thr, d, cap, ch, g_bar, noise_bar) *
               nearest_distance_pdf(cap, d);
    };
    return integrate(integrand, cap.d_min, cap.d_max, abs_tol);
}

// P_out(gamma) = Pr(SINR < gamma | visible) * Pr(visible)
//             = (1 - eta) * (1 - exp(-lambda |A_vis|)).
inline double outage_probability(double gamma_thr, const CapGeometry& cap,
                                 const ChannelParams& ch, const LinkBudget& budget) {
    if (!(gamma_thr > 0.0)) {
        throw std::invalid_argument("outage_probability: gamma_thr > 0 (linear)");
    }
    const double p_vis = visibility_probability(cap);
    if (p_vis <= 0.0) return 0.0;
    const double eta = conditional_success(gamma_thr, cap, ch, budget.mitigation,
                                           budget.normalized_noise());
    const double p = (1.0 - eta) * p_vis;
    return std::clamp(p, 0.0, 1.0);
}

inline double outage_probability(double gamma_thr, const GeometryParams& geom,
                                 LinkDirection dir, const ChannelParams& ch,
                                 const LinkBudget& budget) {
    return outage_probability(gamma_thr, make_cap(geom, dir), ch, budget);
}

}  // namespace pscdss::analytics
