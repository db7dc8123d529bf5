#include "pscdss/consensus/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pscdss/domain/serde.hpp"

namespace pscdss::consensus {

using domain::TaskKind;
using domain::WorldState;

QuorumThresholds quorum_thresholds(int ng, int ns, int m_regions) {
    if (ng < 1 || ns < 0 || m_regions < 1) {
        throw std::invalid_argument("quorum_thresholds: Ng >= 1, Ns >= 0, M >= 1");
    }
    QuorumThresholds q;
    const int nr = ng + ns;
    q.intra_fault_max = nr / 3;
    q.inter_fault_max = m_regions / 2;
    q.intra_quorum = 2 * nr / 3 + 1;
    return q;
}

FaultMask sample_faults(double pf_g, double pf_s, int ng, int ns, mc::Rng& rng) {
    if (!(pf_g >= 0.0 && pf_g <= 1.0 && pf_s >= 0.0 && pf_s <= 1.0)) {
        throw std::invalid_argument("sample_faults: probabilities in [0,1]");
    }
    FaultMask mask(static_cast<std::size_t>(ng + ns));
    for (int i = 0; i < ng; ++i) mask[static_cast<std::size_t>(i)] = rng.bernoulli(pf_g);
    for (int i = 0; i < ns; ++i) {
        mask[static_cast<std::size_t>(ng + i)] = rng.bernoulli(pf_s);
    }
    return mask;
}

RegionConsensus::RegionConsensus(std::uint32_t region, int ng, int ns, std::string scheme)
    : region_(region), ng_(ng), ns_(ns), scheme_(std::move(scheme)) {
    if (ng_ < 1 || ns_ < 0) throw std::invalid_argument("RegionConsensus: Ng >= 1, Ns >= 0");
    replicas_.resize(static_cast<std::size_t>(ng_ + ns_));
}

namespace {

// execute one packaged block against a replica copy, per its pool kind
Block execute_block(int list_index, const Block& raw, Replica& replica,
                    const std::string& scheme) {
    if (list_index == 1) return raw;  // pool-1 blocks pass through unexecuted

    spectrum::TxLists lists;
    lists[list_index] = raw.txs;
    Block result = raw;
    if (list_index == 2) {
        auto e2 = spectrum::exec_func_e2(lists, std::nullopt, std::nullopt, replica.state);
        for (auto& entry : e2.shared) replica.shared.push_back(entry);
        for (auto& entry : e2.awaiting) replica.awaiting.push_back(entry);
        result.txs = std::move(e2.region_block.txs);
    } else {
        auto e3 = spectrum::exec_func_e3(lists, replica.shared, replica.awaiting, scheme,
                                         replica.state);
        auto e4 = spectrum::exec_func_e4(lists, e3.rec_list, replica.state);
        auto e2 = spectrum::exec_func_e2(lists, e4.rec_result, e3.allo_result,
                                         replica.state);
        replica.rec_list = std::move(e3.rec_list);
        // consumed by this allocation round
        replica.shared.clear();
        replica.awaiting.clear();
        result.txs = std::move(e2.region_block.txs);
    }
    result.hash = domain::hash_block(result);
    return result;
}

}  // namespace

IntraOutcome RegionConsensus::run_intra_round(const TxLists& lists, const FaultMask& faults) {
    IntraOutcome outcome;
    if (faults.size() != replicas_.size()) {
        throw std::invalid_argument("run_intra_round: fault mask size mismatch");
    }
    const int nr = ng_ + ns_;
    outcome.fault_count = static_cast<int>(std::count(faults.begin(), faults.end(), true));
    outcome.healthy_count = nr - outcome.fault_count;

    bool any_list = false;
    for (int li = 1; li <= 3; ++li) any_list |= !lists[li].empty();
    if (!any_list) return outcome;

    // the regulator packages one block per non-empty list and broadcasts the
    // pre-prepare; packaging needs no reception, so a faulty (deaf)
    // regulator still issues it
    std::vector<std::pair<int, Block>> packaged;
    for (int li = 1; li <= 3; ++li) {
        if (lists[li].empty()) continue;
        Block block;
        block.header.height = height_ + packaged.size();
        block.header.parent_hash = parent_hash_;
        block.header.region = region_;
        block.header.header_size_bytes = domain::kIntraHeaderBytes;
        block.txs = lists[li];
        if (block.txs.size() > static_cast<std::size_t>(nr)) {
            outcome.diagnostics.push_back("block-capacity-exceeded");
            block.txs.resize(static_cast<std::size_t>(nr));
        }
        block.hash = domain::hash_block(block);
        packaged.emplace_back(li, std::move(block));
    }
    outcome.messages.pre_prepare += packaged.size() * (replicas_.size() - 1);

    // healthy participants execute during the commit stage and broadcast
    // prepare/commit; faulty participants receive nothing and stay silent
    std::vector<std::size_t> healthy;
    for (std::size_t i = 0; i < replicas_.size(); ++i) {
        if (!faults[i]) healthy.push_back(i);
    }
    outcome.messages.prepare += healthy.size() * (replicas_.size() - 1) * packaged.size();
    outcome.messages.commit += healthy.size() * (replicas_.size() - 1) * packaged.size();

    const bool quorum = outcome.healthy_count >= intra_commit_threshold(ng_, ns_);
    if (!quorum) {
        outcome.status = IntraStatus::NoQuorum;
        return outcome;
    }

    // execute on copies; adopt only on commit
    std::vector<Replica> staged;
    staged.reserve(healthy.size());
    std::vector<Block> results;
    for (std::size_t k = 0; k < healthy.size(); ++k) {
        Replica copy = replicas_[healthy[k]];
        std::vector<Block> mine;
        for (const auto& [li, raw] : packaged) {
            mine.push_back(execute_block(li, raw, copy, scheme_));
        }
        if (k == 0) {
            results = mine;
        } else {
            for (std::size_t b = 0; b < mine.size(); ++b) {
                if (mine[b].hash != results[b].hash) {
                    // deterministic executors make this unreachable; abort loudly
                    throw std::logic_error("divergent execution results among non-faulty nodes");
                }
            }
        }
        staged.push_back(std::move(copy));
    }

    for (std::size_t k = 0; k < healthy.size(); ++k) {
        replicas_[healthy[k]] = staged[k];
        for (const auto& b : results) replicas_[healthy[k]].chain.push_back(b.hash);
        outcome.committing_replicas.push_back(healthy[k]);
    }
    height_ += results.size();
    if (!results.empty()) parent_hash_ = results.back().hash;

    // the committed block reaches tier 2 through the region's satellites
    for (int i = ng_; i < nr; ++i) {
        if (!faults[static_cast<std::size_t>(i)]) {
            outcome.relayed_to_tier2 = true;
            break;
        }
    }

    outcome.status = IntraStatus::CommittedBlock;
    outcome.blocks = std::move(results);
    return outcome;
}

void RegionConsensus::adopt_global_commit(const Block& block, const Replica& source) {
    for (auto& replica : replicas_) {
        if (!replica.chain.empty() && replica.chain.back() == block.hash) continue;
        replica.state = source.state;
        replica.shared = source.shared;
        replica.awaiting = source.awaiting;
        replica.chain.push_back(block.hash);
    }
}

InterOutcome run_inter_round(Tier2State& tier2, const std::vector<bool>& regulator_faults,
                             WorldState* regulator_state) {
    InterOutcome outcome;
    if (tier2.bl_pool.empty()) return outcome;

    // FCFS candidate selection by the bootstrapper
    std::size_t pick = 0;
    for (std::size_t i = 1; i < tier2.bl_pool.size(); ++i) {
        if (tier2.bl_pool[i].submitted_at < tier2.bl_pool[pick].submitted_at) pick = i;
    }
    outcome.candidate = tier2.bl_pool[pick];
    tier2.bl_pool.erase(tier2.bl_pool.begin() + static_cast<std::ptrdiff_t>(pick));

    const int m = static_cast<int>(regulator_faults.size());
    int faulty = 0;
    for (bool f : regulator_faults) faulty += f;
    outcome.affirmative_votes = m - faulty;
    outcome.messages.pre_prepare += static_cast<std::uint64_t>(m);
    outcome.messages.vote += static_cast<std::uint64_t>(outcome.affirmative_votes);

    // pool-1 candidates carry raw transactions: healthy regulators execute
    // them; result-bearing candidates are verified instead
    if (regulator_state != nullptr && outcome.affirmative_votes > 0) {
        bool has_raw_global = false;
        for (const auto& tx : outcome.candidate->block.txs) {
            has_raw_global |= !tx.is_result && tx.kind == TaskKind::Global;
        }
        if (has_raw_global) {
            auto e1 = spectrum::exec_func_e1(outcome.candidate->block, *regulator_state);
            outcome.candidate->block = std::move(e1.block);
            if (e1.regulation_conflicts > 0) {
                outcome.diagnostics.push_back("regulation-conflicts=" +
                                              std::to_string(e1.regulation_conflicts));
            }
        }
    }

    // commit requires the fault budget floor(M/2) to cover every faulty
    // regulator, the submitter included
    if (faulty <= m / 2) {
        outcome.status = InterStatus::GlobalCommit;
        ++tier2.committed_height;
        outcome.messages.commit += static_cast<std::uint64_t>(m);
    } else {
        outcome.status = InterStatus::NoCommit;
    }
    return outcome;
}

TwoTierResult run_two_tier_round(RegionConsensus& region, const TxLists& lists,
                                 const FaultMask& region_faults,
                                 const std::vector<bool>& other_regulator_faults) {
    TwoTierResult result;
    result.intra = region.run_intra_round(lists, region_faults);
    if (result.intra.status != IntraStatus::CommittedBlock ||
        !result.intra.relayed_to_tier2) {
        return result;
    }

    Tier2State tier2;
    tier2.bl_pool.push_back({result.intra.blocks.back(), region.region(), 0.0});

    // the submitting regulator is one of the M voters
    std::vector<bool> votes;
    votes.push_back(region_faults[0]);
    votes.insert(votes.end(), other_regulator_faults.begin(), other_regulator_faults.end());
    result.inter = run_inter_round(tier2, votes);

    if (result.inter.status == InterStatus::GlobalCommit) {
        result.committed = true;
        for (std::size_t i : result.intra.committing_replicas) {
            result.committed_hashes.push_back(region.replicas()[i].chain.back());
        }
    }
    return result;
}

std::string trace_json_line(std::uint64_t round, std::uint32_t region,
                            const IntraOutcome& intra, const InterOutcome* inter) {
    nlohmann::json j;
    j["round"] = round;
    j["region"] = region;
    j["phases"] = nlohmann::json::array();
    j["phases"].push_back("pre-prepare");
    if (intra.status == IntraStatus::CommittedBlock) {
        j["phases"].push_back("prepared");
        j["phases"].push_back("committed");
    }
    j["messages"] = {{"pre_prepare", intra.messages.pre_prepare},
                     {"prepare", intra.messages.prepare},
                     {"commit", intra.messages.commit}};
    j["healthy"] = intra.healthy_count;
    j["faulty"] = intra.fault_count;
    j["outcome"] = intra.status == IntraStatus::CommittedBlock ? "committed"
                   : intra.status == IntraStatus::NoQuorum     ? "no-quorum"
                                                               : "idle";
    if (inter != nullptr && inter->status != InterStatus::Idle) {
        j["tier2"] = inter->status == InterStatus::GlobalCommit ? "global-commit"
                                                                : "no-commit";
        j["votes"] = inter->affirmative_votes;
    }
    return j.dump();
}

}  // namespace pscdss::consensus
