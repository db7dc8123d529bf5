#pragma once

#include <cmath>

#include "pscdss/analytics/channel.hpp"
#include "pscdss/analytics/geometry.hpp"
#include "pscdss/analytics/units.hpp"

namespace pscdss {

// Common parameter set; every value here is overridable through the
// experiment config. Angles in degrees and powers in dB flavors, converted
// once by the derive_* helpers below.
struct SystemParams {
    // channel
    double b0 = 0.851;
    double m = 2.91;
    double omega = 0.278;

    // geometry
    double re_m = 6371e3;
    double rs_m = 6871e3;
    double theta_min_deg = 10.0;
    double phi_max_deg = 0.0;  // 0 => horizon limit arccos(RE/RS)
    double lambda_s = 1e-12;   // satellites per m^2 sharing a downlink channel
    double lambda_g = 1e-12;   // ground nodes per m^2 sharing an uplink channel

    // link budget
    double fc_hz = 2e9;
    double pt_sat_dbw = 30.0;
    double pt_ground_dbm = 33.0;
    double gain_tx_ground_dbi = 38.5;
    double gain_tx_sat_dbi = 38.0;
    double gain_rx_sat_dbi = 37.8;
    double gain_rx_ground_dbi = 39.7;
    double mitigation_dl = 0.1;
    double mitigation_ul = 0.1;
    double noise_density_dbm_hz = -174.0;
    double bandwidth_hz = 10e6;

    // consensus population
    int m_regions = 10;
    int ng = 15;
    int ns = 20;

    // transmission outage of the redundant paths
    double pout_wl = 1.0;
    double pout_isl = 1.0;

    // SINR thresholds, dB
    double gamma_dl_db = -1.0;
    double gamma_ul_db = -1.0;

    double noise_w() const {
        return analytics::dbm_to_watt(noise_density_dbm_hz) * bandwidth_hz;
    }
};

inline analytics::ChannelParams derive_channel(const SystemParams& p) {
    return analytics::gamma_params(p.b0, p.m, p.omega);
}

inline analytics::GeometryParams derive_geometry(const SystemParams& p) {
    analytics::GeometryParams g;
    g.re = p.re_m;
    g.rs = p.rs_m;
    g.lambda_s = p.lambda_s;
    g.lambda_g = p.lambda_g;
    g.theta_min = p.theta_min_deg * std::numbers::pi / 180.0;
    g.phi_max = p.phi_max_deg > 0.0 ? p.phi_max_deg * std::numbers::pi / 180.0 : 0.0;
    return g;
}

inline analytics::LinkBudget derive_budget_dl(const SystemParams& p) {
    analytics::LinkBudget b;
    b.tx_power_w = analytics::dbw_to_watt(p.pt_sat_dbw);
    b.gain_tx_dbi = p.gain_tx_sat_dbi;
    b.gain_rx_dbi = p.gain_rx_ground_dbi;
    b.fc_hz = p.fc_hz;
    b.noise_w = p.noise_w();
    b.mitigation = p.mitigation_dl;
    return b;
}

inline analytics::LinkBudget derive_budget_ul(const SystemParams& p) {
    analytics::LinkBudget b;
    b.tx_power_w = analytics::dbm_to_watt(p.pt_ground_dbm);
    b.gain_tx_dbi = p.gain_tx_ground_dbi;
    b.gain_rx_dbi = p.gain_rx_sat_dbi;
    b.fc_hz = p.fc_hz;
    b.noise_w = p.noise_w();
    b.mitigation = p.mitigation_ul;
    return b;
}

}  // namespace pscdss
