#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pscdss/analytics/units.hpp"

namespace pscdss::analytics {

enum class LinkDirection { Downlink, Uplink };

// Sphere-pair geometry for one link direction. Everything downstream
// (visibility, nearest-distance law, interference PGFL) is driven by the
// transmitter cap seen from the receiver, which this struct reduces to:
//   kappa  = R_tx / R_rx        (the ratio appearing in all cap integrals)
//   d_min  = R_S - R_E          (closest possible transmitter)
//   d_max  = elevation / zenith limited maximum chord distance
//   area   = pi * kappa * (d_max^2 - d_min^2)   (Archimedes hat-box)
struct CapGeometry {
    LinkDirection direction = LinkDirection::Downlink;
    double r_tx = 0.0;
    double r_rx = 0.0;
    double lambda = 0.0;  // transmitter density, per m^2
    double d_min = 0.0;
    double d_max = 0.0;

    double kappa() const { return r_tx / r_rx; }
    double area() const {
        return std::numbers::pi * kappa() * (d_max * d_max - d_min * d_min);
    }
    double mean_count() const { return lambda * area(); }
};

struct GeometryParams {
    double re = 6371e3;            // m
    double rs = 6871e3;            // m
    double lambda_s = 1e-12;       // satellites per m^2
    double lambda_g = 1e-12;       // co-channel ground nodes per m^2
    double theta_min = 10.0 * std::numbers::pi / 180.0;  // min elevation, rad
    // Earth-centered zenith limit; <= 0 means "horizon", arccos(RE/RS).
    double phi_max = 0.0;

    double phi_max_effective() const {
        return phi_max > 0.0 ? phi_max : std::acos(re / rs);
    }
};

inline double downlink_max_distance(const GeometryParams& g) {
    const double rsin = g.re * std::sin(g.theta_min);
    return std::sqrt(rsin * rsin + g.rs * g.rs - g.re * g.re) - rsin;
}

inline double uplink_max_distance(const GeometryParams& g) {
    const double c = std::cos(g.phi_max_effective());
    return std::sqrt(g.re * g.re + g.rs * g.rs - 2.0 * g.re * g.rs * c);
}

inline CapGeometry make_cap(const GeometryParams& g, LinkDirection dir) {
    if (!(g.rs > g.re) || !(g.re > 0.0)) {
        throw std::invalid_argument("make_cap: requires RS > RE > 0");
    }
    CapGeometry cap;
    cap.direction = dir;
    cap.d_min = g.rs - g.re;
    if (dir == LinkDirection::Downlink) {
        cap.r_tx = g.rs;
        cap.r_rx = g.re;
        cap.lambda = g.lambda_s;
        cap.d_max = downlink_max_distance(g);
    } else {
        cap.r_tx = g.re;
        cap.r_rx = g.rs;
        cap.lambda = g.lambda_g;
        cap.d_max = uplink_max_distance(g);
    }
    return cap;
}

// Per-direction transmit side of the SINR. All dB inputs convert to linear
// here; the analytic and Monte Carlo paths only ever see linear units.
struct LinkBudget {
    double tx_power_w = 0.0;
    double gain_tx_dbi = 0.0;
    double gain_rx_dbi = 0.0;
    double fc_hz = 2e9;
    double noise_w = 0.0;          // receiver noise power, W
    double mitigation = 0.1;       // interference mitigation factor in [0,1]

    // g0 = g_t * g_r * (c / (4 pi fc))^2, linear
    double effective_gain() const {
        const double aperture = kLightSpeed / (4.0 * std::numbers::pi * fc_hz);
        return db_to_linear(gain_tx_dbi + gain_rx_dbi) * aperture * aperture;
    }

    // sigma_bar^2 = sigma^2 / (Pt g0): noise normalized by the serving link.
    double normalized_noise() const {
        return noise_w / (tx_power_w * effective_gain());
    }
};

}  // namespace pscdss::analytics
