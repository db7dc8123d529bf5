#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "pscdss/analytics/geometry.hpp"
#include "pscdss/mc/rng.hpp"

namespace pscdss::mc {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// One realization of the transmitter process on the visible cap. The
// receiver sits on the +z axis at radius r_rx; chord distances are what the
// path loss sees, so they are precomputed.
struct CapSample {
    std::vector<Vec3> points;
    std::vector<double> chord;  // distance from the receiver, per point
    Vec3 receiver;
    std::ptrdiff_t nearest = -1;  // -1 when the cap is empty

    bool empty() const { return points.empty(); }
    double nearest_distance() const {
        return nearest < 0 ? std::numeric_limits<double>::infinity()
                           : chord[static_cast<std::size_t>(nearest)];
    }
};

// Poisson count on the cap, positions uniform by the hat-box construction:
// axial coordinate uniform on [z_min, r_tx], azimuth uniform. The chord to
// the receiver depends only on the axial coordinate.
inline CapSample sample_cap_points(const analytics::CapGeometry& cap, Rng& rng) {
    CapSample sample;
    sample.receiver = Vec3{0.0, 0.0, cap.r_rx};
    const std::uint64_t count = rng.poisson(cap.mean_count());
    if (count == 0) return sample;

    const double z_min =
        (cap.r_tx * cap.r_tx + cap.r_rx * cap.r_rx - cap.d_max * cap.d_max) /
        (2.0 * cap.r_rx);
    sample.points.reserve(count);
    sample.chord.reserve(count);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < count; ++i) {
        const double z = rng.uniform(z_min, cap.r_tx);
        const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double rho = std::sqrt(std::max(0.0, cap.r_tx * cap.r_tx - z * z));
        sample.points.push_back(Vec3{rho * std::cos(phi), rho * std::sin(phi), z});
        const double d = std::sqrt(cap.r_tx * cap.r_tx + cap.r_rx * cap.r_rx -
                                   2.0 * cap.r_rx * z);
        sample.chord.push_back(d);
        if (d < best) {
            best = d;
            sample.nearest = static_cast<std::ptrdiff_t>(i);
        }
    }
    return sample;
}

}  // namespace pscdss::mc
