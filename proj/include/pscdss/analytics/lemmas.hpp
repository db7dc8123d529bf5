#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pscdss/analytics/channel.hpp"
#include "pscdss/analytics/geometry.hpp"
#include "pscdss/analytics/hyp2f1.hpp"

namespace pscdss::analytics {

// P(at least one transmitter in the visible cap) = 1 - exp(-lambda |A_vis|).
inline double visibility_probability(const CapGeometry& cap) {
    return -std::expm1(-cap.mean_count());
}

inline double visibility_probability(const GeometryParams& g, LinkDirection dir) {
    return visibility_probability(make_cap(g, dir));
}

// Conditional nearest-transmitter distance PDF on [d_min, d_max], zero
// outside. Written with the exponents combined so large densities cannot
// overflow the normalizing constant.
inline double nearest_distance_pdf(const CapGeometry& cap, double d) {
    if (d < cap.d_min || d > cap.d_max) return 0.0;
    const double c = std::numbers::pi * cap.lambda * cap.kappa();
    const double norm = -std::expm1(-c * (cap.d_max * cap.d_max - cap.d_min * cap.d_min));
    if (norm <= 0.0) return 0.0;  // empty process: no conditional law
    return 2.0 * c * d * std::exp(-c * (d * d - cap.d_min * cap.d_min)) / norm;
}

inline double nearest_distance_cdf(const CapGeometry& cap, double d) {
    if (d <= cap.d_min) return 0.0;
    if (d >= cap.d_max) return 1.0;
    const double c = std::numbers::pi * cap.lambda * cap.kappa();
    const double norm = -std::expm1(-c * (cap.d_max * cap.d_max - cap.d_min * cap.d_min));
    if (norm <= 0.0) return 0.0;
    return -std::expm1(-c * (d * d - cap.d_min * cap.d_min)) / norm;
}

namespace detail {

// log of the PGFL correction term:
//   T(x) = x^{2(a+1)} / ((s g beta)^a (a+1)) * 2F1(a, a+1; a+2; -x^2/(s g beta))
// evaluated through the elementary kernel integral, which is stable for the
// full range of s the outage integral sweeps (s g beta from ~0 to ~1e13).
inline double pgfl_term(double x, double sgb, int alpha) {
    const double u = x * x / sgb;
    return sgb * pgfl_kernel_integral(alpha, u);
}

}  // namespace detail

// Laplace transform of the conditional aggregated interference seen from a
// receiver whose serving transmitter sits at distance d0: interferers form
// the cap annulus (d0, d_max], each contributing g_bar * |h|^2 * d^-2 with
// |h|^2 ~ Gamma(alpha_int, beta).
inline double laplace_interference(double s, const CapGeometry& cap,
                                   const ChannelParams& ch, double g_bar,
                                   double d0) {
    if (s < 0.0) throw std::invalid_argument("laplace_interference: s >= 0");
    if (d0 < cap.d_min || d0 > cap.d_max) {
        throw std::invalid_argument("laplace_interference: d0 outside support");
    }
    if (s == 0.0) return 1.0;
    if (g_bar == 0.0) return 1.0;  // interference fully mitigated
    const double c = std::numbers::pi * cap.lambda * cap.kappa();
    const double sgb = s * g_bar * ch.beta;
    const double annulus = cap.d_max * cap.d_max - d0 * d0;
    const double log_l = c * (-annulus + detail::pgfl_term(cap.d_max, sgb, ch.alpha_int) -
                              detail::pgfl_term(d0, sgb, ch.alpha_int));
    return std::exp(log_l);
}

}  // namespace pscdss::analytics
