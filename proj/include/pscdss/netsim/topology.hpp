#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pscdss/domain/types.hpp"
#include "pscdss/netsim/tle.hpp"

namespace pscdss::netsim {

enum class LinkKind { SatTerrestrial, ISL, Wired };

struct TopologyNode {
    domain::ParticipantId id;
    EcefPosition pos;
    bool is_satellite = false;
};

struct RegionNodes {
    std::size_t regulator = 0;           // index into nodes
    std::vector<std::size_t> grounds;    // regulator first
    std::vector<std::size_t> satellites;

    std::vector<std::size_t> all() const {
        auto v = grounds;
        v.insert(v.end(), satellites.begin(), satellites.end());
        return v;
    }
};

struct Station {
    std::string name;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

std::vector<Station> parse_stations_file(const std::string& path);
std::vector<Station> parse_stations_text(const std::string& text);

struct Topology {
    std::vector<TopologyNode> nodes;
    std::vector<RegionNodes> regions;
    std::vector<std::size_t> disseminators;  // satellite relays, tier 2
    std::size_t bootstrapper = 0;            // lowest-id disseminator
    int ng = 0;
    int ns = 0;

    LinkKind link_kind(std::size_t a, std::size_t b) const;
    // straight-line for radio links; great-circle with the fiber detour
    // factor folded in for wired ground links
    double effective_distance_m(std::size_t a, std::size_t b) const;

    // tier-2 relay path length: regulator -> nearest disseminator ->
    // bootstrapper (single relay hop by default)
    double tier2_path_m(std::uint32_t region) const;
    // satellite relay path between two regulators
    double relay_path_m(std::uint32_t region_a, std::uint32_t region_b) const;
};

struct TopologyConfig {
    int m_regions = 4;
    int ng = 10;
    int ns = 5;
    std::uint64_t seed = 1;
    double disc_radius_m = 150e3;  // base stations scatter around the station
};

// Regions anchored at the first M stations; base stations uniform in a disc
// around each, satellites assigned nearest-first from the TLE constellation,
// leftovers become tier-2 disseminators.
Topology build_topology(const std::vector<TleRecord>& constellation,
                        const std::vector<Station>& stations, const TopologyConfig& cfg);

Topology build_topology_from_files(const std::string& tle_path,
                                   const std::string& stations_path,
                                   const TopologyConfig& cfg);

EcefPosition station_ecef(double lat_deg, double lon_deg, double radius_m = 6371e3);
double chord_m(const EcefPosition& a, const EcefPosition& b);
double ground_great_circle_m(const EcefPosition& a, const EcefPosition& b);

}  // namespace pscdss::netsim
