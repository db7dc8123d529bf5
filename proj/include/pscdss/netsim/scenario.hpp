#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pscdss/netsim/link.hpp"
#include "pscdss/netsim/topology.hpp"

namespace pscdss::netsim {

enum class Protocol { PSCDSS, CBRS, SingleChain, MultiChain, CrossChain };

std::string protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

struct Metrics {
    std::vector<double> round_latencies_s;  // committed rounds only
    std::uint64_t committed_txs = 0;
    std::uint64_t failed_rounds = 0;
    std::uint64_t messages = 0;
    std::uint64_t bytes = 0;
    double sim_end_s = 0.0;

    double mean_latency_s() const {
        if (round_latencies_s.empty()) return 0.0;
        double total = 0.0;
        for (double v : round_latencies_s) total += v;
        return total / static_cast<double>(round_latencies_s.size());
    }
};

// committed transactions per simulated second
double measure_tps(const Metrics& metrics);

struct ScenarioConfig {
    Protocol protocol = Protocol::PSCDSS;
    int rounds = 30;  // per region
    std::uint64_t seed = 1;
    double pf_g = 0.0;  // per-round fault probabilities (crash-silence)
    double pf_s = 0.0;
    double retry_timeout_s = 1.0;  // charged to a round that reaches no quorum
    LinkModel link;
};

// Drives the chosen protocol over the topology until every region has
// `rounds` committed heights (or exhausts its attempts under faults).
Metrics run_scenario(const Topology& topology, const ScenarioConfig& cfg);

}  // namespace pscdss::netsim
