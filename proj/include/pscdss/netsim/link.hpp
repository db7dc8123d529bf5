#pragma once

#include <cstdint>

namespace pscdss::netsim {

// Per-message cost model: fixed CPU cost to generate and to verify a
// consensus message, serialization at the line rate, propagation at c.
struct LinkModel {
    double rate_bps = 200e6;
    double cpu_hz = 2.4e9;
    double msg_cost_cycles = 4e6;
    double light_speed_m_s = 2.99792458e8;

    double generate_s() const { return msg_cost_cycles / cpu_hz; }
    double verify_s() const { return msg_cost_cycles / cpu_hz; }
    double transmit_s(std::uint64_t bytes) const {
        return static_cast<double>(bytes) * 8.0 / rate_bps;
    }
    double propagate_s(double distance_m) const { return distance_m / light_speed_m_s; }
};

// end-to-end delay of one message over one link, all four cost terms
inline double message_delay(std::uint64_t bytes, double distance_m,
                            const LinkModel& link = {}) {
    return link.generate_s() + link.transmit_s(bytes) + link.propagate_s(distance_m) +
           link.verify_s();
}

// consensus message sizes, bytes
inline constexpr std::uint64_t kPrePrepareBytes = 800;
inline constexpr std::uint64_t kPrepareBytes = 200;
inline constexpr std::uint64_t kCommitBytes = 215;
inline constexpr std::uint64_t kVoteBytes = 800;

}  // namespace pscdss::netsim
