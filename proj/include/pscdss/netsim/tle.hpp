#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pscdss::netsim {

struct TleError : std::runtime_error {
    TleError(const std::string& what, int line_number)
        : std::runtime_error(what + " (line " + std::to_string(line_number) + ")"),
          line(line_number) {}
    int line;
};

struct TleRecord {
    std::string name;
    int catalog_number = 0;
    double inclination_deg = 0.0;
    double raan_deg = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_deg = 0.0;
    double mean_anomaly_deg = 0.0;
    double mean_motion_rev_day = 0.0;
};

struct EcefPosition {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Standard two-line element sets: 69-character lines, modulo-10 checksum
// (digits count as themselves, '-' as 1). Name lines are optional. Errors
// carry the offending line number.
std::vector<TleRecord> parse_tle_text(const std::string& text);
std::vector<TleRecord> parse_tle_file(const std::string& path);

int tle_checksum(const std::string& line);  // over the first 68 characters

// Circular-orbit propagation: semi-major axis from the mean motion, the
// satellite advanced along its plane by mean anomaly + n*t. Earth rotation
// is ignored (positions are a snapshot; only distance scales matter here).
double orbit_radius_m(const TleRecord& rec);
EcefPosition propagate_circular(const TleRecord& rec, double t_seconds);

}  // namespace pscdss::netsim
