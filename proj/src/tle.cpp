#include "pscdss/netsim/tle.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pscdss::netsim {

namespace {

constexpr double kMu = 3.986004418e14;  // m^3/s^2

double parse_field(const std::string& line, std::size_t pos, std::size_t len,
                   int line_number) {
    const std::string field = line.substr(pos, len);
    try {
        return std::stod(field);
    } catch (const std::exception&) {
        throw TleError("unparsable numeric field '" + field + "'", line_number);
    }
}

}  // namespace

int tle_checksum(const std::string& line) {
    int sum = 0;
    for (std::size_t i = 0; i + 1 < 69 && i < line.size(); ++i) {
        const char c = line[i];
        if (std::isdigit(static_cast<unsigned char>(c))) sum += c - '0';
        if (c == '-') sum += 1;
    }
    return sum % 10;
}

std::vector<TleRecord> parse_tle_text(const std::string& text) {
    std::vector<TleRecord> records;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    std::string pending_name;
    std::string line1;
    int line1_number = 0;

    while (std::getline(in, line)) {
        ++line_number;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;

        if (line[0] != '1' && line[0] != '2') {
            pending_name = line;
            continue;
        }
        if (line.size() != 69) {
            throw TleError("element line must be 69 characters, got " +
                               std::to_string(line.size()),
                           line_number);
        }
        const int expected = line.back() - '0';
        if (expected < 0 || expected > 9 || tle_checksum(line) != expected) {
            throw TleError("checksum mismatch", line_number);
        }

        if (line[0] == '1') {
            line1 = line;
            line1_number = line_number;
            continue;
        }

        // line 2 must follow a line 1 for the same object
        if (line1.empty()) throw TleError("line 2 without a preceding line 1", line_number);
        if (line1.substr(2, 5) != line.substr(2, 5)) {
            throw TleError("catalog number mismatch between line pair", line_number);
        }

        TleRecord rec;
        rec.name = pending_name;
        rec.catalog_number = static_cast<int>(parse_field(line, 2, 5, line_number));
        rec.inclination_deg = parse_field(line, 8, 8, line_number);
        rec.raan_deg = parse_field(line, 17, 8, line_number);
        rec.eccentricity = parse_field("0." + line.substr(26, 7), 0, 9, line_number);
        rec.arg_perigee_deg = parse_field(line, 34, 8, line_number);
        rec.mean_anomaly_deg = parse_field(line, 43, 8, line_number);
        rec.mean_motion_rev_day = parse_field(line, 52, 11, line_number);
        if (rec.mean_motion_rev_day <= 0.0) {
            throw TleError("mean motion must be positive", line_number);
        }
        records.push_back(std::move(rec));
        pending_name.clear();
        line1.clear();
    }
    if (!line1.empty()) throw TleError("dangling line 1 at end of file", line1_number);
    return records;
}

std::vector<TleRecord> parse_tle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open TLE file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tle_text(buffer.str());
}

double orbit_radius_m(const TleRecord& rec) {
    const double n_rad_s = rec.mean_motion_rev_day * 2.0 * std::numbers::pi / 86400.0;
    return std::cbrt(kMu / (n_rad_s * n_rad_s));
}

EcefPosition propagate_circular(const TleRecord& rec, double t_seconds) {
    const double a = orbit_radius_m(rec);
    const double n_rad_s = rec.mean_motion_rev_day * 2.0 * std::numbers::pi / 86400.0;
    const double deg = std::numbers::pi / 180.0;
    // circular orbit: argument of latitude = arg perigee + mean anomaly + n t
    const double u = (rec.arg_perigee_deg + rec.mean_anomaly_deg) * deg + n_rad_s * t_seconds;
    const double inc = rec.inclination_deg * deg;
    const double raan = rec.raan_deg * deg;
    const double cos_u = std::cos(u), sin_u = std::sin(u);
    const double cos_i = std::cos(inc), sin_i = std::sin(inc);
    const double cos_o = std::cos(raan), sin_o = std::sin(raan);
    EcefPosition p;
    p.x = a * (cos_o * cos_u - sin_o * sin_u * cos_i);
    p.y = a * (sin_o * cos_u + cos_o * sin_u * cos_i);
    p.z = a * (sin_u * sin_i);
    return p;
}

}  // namespace pscdss::netsim
