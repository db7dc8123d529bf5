#include "pscdss/netsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "pscdss/mc/rng.hpp"

namespace pscdss::netsim {

using domain::ParticipantId;
using domain::ParticipantKind;

namespace {

constexpr double kEarthRadius = 6371e3;
constexpr double kFiberDetour = 1.5;  // light in fiber at 2c/3

}  // namespace

EcefPosition station_ecef(double lat_deg, double lon_deg, double radius_m) {
    const double lat = lat_deg * std::numbers::pi / 180.0;
    const double lon = lon_deg * std::numbers::pi / 180.0;
    return {radius_m * std::cos(lat) * std::cos(lon),
            radius_m * std::cos(lat) * std::sin(lon), radius_m * std::sin(lat)};
}

double chord_m(const EcefPosition& a, const EcefPosition& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double ground_great_circle_m(const EcefPosition& a, const EcefPosition& b) {
    const double ra = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
    const double rb = std::sqrt(b.x * b.x + b.y * b.y + b.z * b.z);
    if (ra == 0.0 || rb == 0.0) return 0.0;
    const double dot = (a.x * b.x + a.y * b.y + a.z * b.z) / (ra * rb);
    return kEarthRadius * std::acos(std::clamp(dot, -1.0, 1.0));
}

std::vector<Station> parse_stations_text(const std::string& text) {
    std::vector<Station> stations;
    std::istringstream in(text);
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("name,", 0) == 0) continue;  // header row
        std::istringstream fields(line);
        Station s;
        std::string lat, lon;
        if (!std::getline(fields, s.name, ',') || !std::getline(fields, lat, ',') ||
            !std::getline(fields, lon, ',')) {
            throw std::runtime_error("stations: malformed row at line " +
                                     std::to_string(line_number));
        }
        s.lat_deg = std::stod(lat);
        s.lon_deg = std::stod(lon);
        stations.push_back(std::move(s));
    }
    return stations;
}

std::vector<Station> parse_stations_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stations file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_stations_text(buffer.str());
}

LinkKind Topology::link_kind(std::size_t a, std::size_t b) const {
    const bool sa = nodes[a].is_satellite;
    const bool sb = nodes[b].is_satellite;
    if (sa && sb) return LinkKind::ISL;
    if (!sa && !sb) return LinkKind::Wired;
    return LinkKind::SatTerrestrial;
}

double Topology::effective_distance_m(std::size_t a, std::size_t b) const {
    if (link_kind(a, b) == LinkKind::Wired) {
        return kFiberDetour * ground_great_circle_m(nodes[a].pos, nodes[b].pos);
    }
    return chord_m(nodes[a].pos, nodes[b].pos);
}

double Topology::tier2_path_m(std::uint32_t region) const {
    const auto& reg = nodes[regions[region].regulator];
    double best = 1e300;
    std::size_t nearest = bootstrapper;
    for (std::size_t d : disseminators) {
        const double dist = chord_m(reg.pos, nodes[d].pos);
        if (dist < best) {
            best = dist;
            nearest = d;
        }
    }
    return best + chord_m(nodes[nearest].pos, nodes[bootstrapper].pos);
}

double Topology::relay_path_m(std::uint32_t region_a, std::uint32_t region_b) const {
    const auto& a = nodes[regions[region_a].regulator];
    const auto& b = nodes[regions[region_b].regulator];
    double best = 1e300;
    for (std::size_t d : disseminators) {
        const double via = chord_m(a.pos, nodes[d].pos) + chord_m(nodes[d].pos, b.pos);
        best = std::min(best, via);
    }
    return best;
}

Topology build_topology(const std::vector<TleRecord>& constellation,
                        const std::vector<Station>& stations, const TopologyConfig& cfg) {
    if (cfg.m_regions < 1 || cfg.ng < 1 || cfg.ns < 0) {
        throw std::invalid_argument("build_topology: M >= 1, Ng >= 1, Ns >= 0");
    }
    if (static_cast<std::size_t>(cfg.m_regions) > stations.size()) {
        throw std::invalid_argument("build_topology: fewer stations than regions");
    }
    const std::size_t sats_needed = static_cast<std::size_t>(cfg.m_regions) *
                                    static_cast<std::size_t>(cfg.ns);
    if (constellation.size() < sats_needed + 1) {
        throw std::invalid_argument(
            "build_topology: constellation too small for regions plus a disseminator");
    }

    Topology topo;
    topo.ng = cfg.ng;
    topo.ns = cfg.ns;

    std::vector<EcefPosition> sat_pos;
    sat_pos.reserve(constellation.size());
    for (const auto& rec : constellation) sat_pos.push_back(propagate_circular(rec, 0.0));
    std::vector<bool> sat_taken(constellation.size(), false);

    for (int r = 0; r < cfg.m_regions; ++r) {
        RegionNodes region;
        const auto& st = stations[static_cast<std::size_t>(r)];
        const EcefPosition anchor = station_ecef(st.lat_deg, st.lon_deg);

        TopologyNode regulator;
        regulator.id = ParticipantId{static_cast<std::uint32_t>(r),
                                     ParticipantKind::Regulator, 0};
        regulator.pos = anchor;
        region.regulator = topo.nodes.size();
        region.grounds.push_back(topo.nodes.size());
        topo.nodes.push_back(regulator);

        // base stations uniform in a disc around the station
        mc::Rng rng(cfg.seed, 100 + static_cast<std::uint64_t>(r));
        for (int g = 1; g < cfg.ng; ++g) {
            const double radius = cfg.disc_radius_m * std::sqrt(rng.uniform());
            const double bearing = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double dlat = (radius / kEarthRadius) * std::cos(bearing);
            const double coslat = std::max(0.05, std::cos(st.lat_deg * std::numbers::pi / 180.0));
            const double dlon = (radius / kEarthRadius) * std::sin(bearing) / coslat;
            TopologyNode bs;
            bs.id = ParticipantId{static_cast<std::uint32_t>(r),
                                  ParticipantKind::BaseStation,
                                  static_cast<std::uint32_t>(g)};
            bs.pos = station_ecef(st.lat_deg + dlat * 180.0 / std::numbers::pi,
                                  st.lon_deg + dlon * 180.0 / std::numbers::pi);
            region.grounds.push_back(topo.nodes.size());
            topo.nodes.push_back(bs);
        }

        // nearest unassigned satellites join the region
        for (int s = 0; s < cfg.ns; ++s) {
            std::size_t best = constellation.size();
            double best_dist = 1e300;
            for (std::size_t i = 0; i < constellation.size(); ++i) {
                if (sat_taken[i]) continue;
                const double d = chord_m(anchor, sat_pos[i]);
                if (d < best_dist) {
                    best_dist = d;
                    best = i;
                }
            }
            sat_taken[best] = true;
            TopologyNode sat;
            sat.id = ParticipantId{static_cast<std::uint32_t>(r),
                                   ParticipantKind::Satellite,
                                   static_cast<std::uint32_t>(s)};
            sat.pos = sat_pos[best];
            sat.is_satellite = true;
            region.satellites.push_back(topo.nodes.size());
            topo.nodes.push_back(sat);
        }
        topo.regions.push_back(std::move(region));
    }

    // remaining satellites relay tier-2 traffic
    std::uint32_t ordinal = 0;
    for (std::size_t i = 0; i < constellation.size(); ++i) {
        if (sat_taken[i]) continue;
        TopologyNode d;
        d.id = ParticipantId{0, ParticipantKind::Disseminator, ordinal++};
        d.pos = sat_pos[i];
        d.is_satellite = true;
        topo.disseminators.push_back(topo.nodes.size());
        topo.nodes.push_back(d);
    }
    topo.bootstrapper = topo.disseminators.front();  // lowest id hosts the bootstrapper
    return topo;
}

Topology build_topology_from_files(const std::string& tle_path,
                                   const std::string& stations_path,
                                   const TopologyConfig& cfg) {
    return build_topology(parse_tle_file(tle_path), parse_stations_file(stations_path), cfg);
}

}  // namespace pscdss::netsim
