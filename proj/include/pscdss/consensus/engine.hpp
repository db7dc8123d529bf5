#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pscdss/domain/types.hpp"
#include "pscdss/mc/rng.hpp"
#include "pscdss/spectrum/engine.hpp"

namespace pscdss::consensus {

using domain::Block;
using domain::Transaction;
using spectrum::TxLists;

struct QuorumThresholds {
    int intra_fault_max = 0;  // floor((Ng+Ns)/3)
    int inter_fault_max = 0;  // floor(M/2)
    int intra_quorum = 0;     // smallest count strictly exceeding 2(Ng+Ns)/3
};

QuorumThresholds quorum_thresholds(int ng, int ns, int m_regions);

// Healthy-participant count required to commit a round. Equals
// Nr - floor(Nr/3): the fault-tolerance bound the success-rate analysis
// counts with. Differs from intra_quorum only when 3 | Nr, where the strict
// two-thirds reading would reject a round the tolerance bound admits.
inline int intra_commit_threshold(int ng, int ns) {
    const int nr = ng + ns;
    return nr - nr / 3;
}

// fault mask over one region's participants: [0] regulator,
// [1..ng-1] base stations, [ng..ng+ns-1] satellites; true = faulty
// (transmission outage) for the whole round
using FaultMask = std::vector<bool>;

FaultMask sample_faults(double pf_g, double pf_s, int ng, int ns, mc::Rng& rng);

enum class IntraStatus { CommittedBlock, NoQuorum, Idle };

struct MessageCounters {
    std::uint64_t pre_prepare = 0;
    std::uint64_t prepare = 0;
    std::uint64_t commit = 0;
    std::uint64_t vote = 0;
};

struct IntraOutcome {
    IntraStatus status = IntraStatus::Idle;
    std::vector<Block> blocks;          // executed result blocks, commit order
    bool relayed_to_tier2 = false;      // at least one healthy satellite
    int healthy_count = 0;
    int fault_count = 0;
    std::vector<std::size_t> committing_replicas;
    MessageCounters messages;
    std::vector<std::string> diagnostics;
};

// One blockchain participant's replicated context.
struct Replica {
    domain::WorldState state;
    spectrum::SharedSpecList shared;
    spectrum::AwaitTerList awaiting;
    spectrum::SpecRecList rec_list;
    std::vector<std::uint64_t> chain;  // committed block hashes, genesis-free
};

class RegionConsensus {
public:
    RegionConsensus(std::uint32_t region, int ng, int ns, std::string scheme = "max-revenue");

    // Drives pre-prepare / prepare / commit over the packaged blocks with
    // execute-at-commit semantics. Pool-1 blocks pass through unexecuted.
    // A faulty regulator still issues its pre-prepare (faults model
    // reception outages) but casts no votes.
    IntraOutcome run_intra_round(const TxLists& lists, const FaultMask& faults);

    // Applies a globally committed block to every replica, including ones
    // that were faulty during the round (the world-state propagation step);
    // `source` must be a replica holding the post-execution state.
    void adopt_global_commit(const Block& block, const Replica& source);

    const std::vector<Replica>& replicas() const { return replicas_; }
    Replica& replica(std::size_t i) { return replicas_[i]; }
    std::uint32_t region() const { return region_; }
    int ng() const { return ng_; }
    int ns() const { return ns_; }

    bool is_satellite(std::size_t index) const { return static_cast<int>(index) >= ng_; }

private:
    std::uint32_t region_;
    int ng_;
    int ns_;
    std::string scheme_;
    std::uint64_t height_ = 0;
    std::uint64_t parent_hash_ = 0;
    std::vector<Replica> replicas_;
};

enum class InterStatus { GlobalCommit, NoCommit, Idle };

struct Tier2Candidate {
    Block block;
    std::uint32_t origin_region = 0;
    double submitted_at = 0.0;
};

struct InterOutcome {
    InterStatus status = InterStatus::Idle;
    std::optional<Tier2Candidate> candidate;
    int affirmative_votes = 0;
    MessageCounters messages;
    std::vector<std::string> diagnostics;
};

struct Tier2State {
    std::vector<Tier2Candidate> bl_pool;
    std::uint64_t committed_height = 0;
};

// Bootstrapper-driven tier-2 round: FCFS candidate selection, execution or
// verification by healthy regulators, commit on more than half affirmative
// (a faulty submitting regulator both misses its vote and consumes budget).
InterOutcome run_inter_round(Tier2State& tier2, const std::vector<bool>& regulator_faults,
                             domain::WorldState* regulator_state = nullptr);

// --- full two-tier round driver (used by the exhaustive safety checks) ----

struct TwoTierResult {
    bool committed = false;         // block globally committed
    IntraOutcome intra;
    InterOutcome inter;
    std::vector<std::uint64_t> committed_hashes;  // one per committing node
};

// Runs one region's round end to end against M regulators. regulator_faults
// covers the other M-1 regions' regulators; the submitting regulator's
// fault bit comes from the region mask.
TwoTierResult run_two_tier_round(RegionConsensus& region, const TxLists& lists,
                                 const FaultMask& region_faults,
                                 const std::vector<bool>& other_regulator_faults);

// round trace line: (round, region, phases, message counts, outcome)
std::string trace_json_line(std::uint64_t round, std::uint32_t region,
                            const IntraOutcome& intra, const InterOutcome* inter);

}  // namespace pscdss::consensus
