#include "pscdss/netsim/scenario.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <queue>

#include "pscdss/consensus/engine.hpp"
#include "pscdss/domain/types.hpp"
#include "pscdss/mc/rng.hpp"

namespace pscdss::netsim {

using domain::ParticipantKind;
using domain::TaskKind;

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::PSCDSS: return "pscdss";
        case Protocol::CBRS: return "cbrs";
        case Protocol::SingleChain: return "single-chain";
        case Protocol::MultiChain: return "multi-chain";
        case Protocol::CrossChain: return "cross-chain";
    }
    return "?";
}

Protocol protocol_from_name(const std::string& name) {
    if (name == "pscdss") return Protocol::PSCDSS;
    if (name == "cbrs") return Protocol::CBRS;
    if (name == "single-chain") return Protocol::SingleChain;
    if (name == "multi-chain") return Protocol::MultiChain;
    if (name == "cross-chain") return Protocol::CrossChain;
    throw std::invalid_argument("unknown protocol: " + name);
}

double measure_tps(const Metrics& metrics) {
    if (metrics.round_latencies_s.empty() || metrics.sim_end_s <= 0.0) {
        throw std::runtime_error("measure_tps: no committed rounds");
    }
    return static_cast<double>(metrics.committed_txs) / metrics.sim_end_s;
}

namespace {

// ---------------------------------------------------------------------------
// event core: nodes have one CPU (message generate/verify serialize on it)
// and one outbound line; events are totally ordered by (time, sequence)

class Sim {
public:
    Sim(std::size_t node_count, const LinkModel& link, Metrics& metrics)
        : cpu_(node_count, 0.0), nic_(node_count, 0.0), link_(link), metrics_(metrics) {}

    double now() const { return now_; }
    const LinkModel& link() const { return link_; }

    void at(double t, std::function<void()> fn) {
        queue_.push(Event{std::max(t, now_), seq_++, std::move(fn)});
    }

    // full message path; on_done fires at verify completion on the receiver
    void send(std::size_t from, std::size_t to, std::uint64_t bytes, double distance_m,
              std::function<void(double)> on_done) {
        ++metrics_.messages;
        metrics_.bytes += bytes;
        const double gen_done = std::max(cpu_[from], now_) + link_.generate_s();
        cpu_[from] = gen_done;
        const double tx_done = std::max(nic_[from], gen_done) + link_.transmit_s(bytes);
        nic_[from] = tx_done;
        const double arrival = tx_done + link_.propagate_s(distance_m);
        at(arrival, [this, to, cb = std::move(on_done)]() {
            const double done = std::max(cpu_[to], now_) + link_.verify_s();
            cpu_[to] = done;
            at(done, [cb, done]() { cb(done); });
        });
    }

    // occupy a node's CPU without any message (local processing)
    double occupy_cpu(std::size_t node, double seconds) {
        const double done = std::max(cpu_[node], now_) + seconds;
        cpu_[node] = done;
        return done;
    }

    void run() {
        while (!queue_.empty()) {
            Event e = queue_.top();
            queue_.pop();
            // causality: the processed order is non-decreasing in time
            now_ = e.t;
            e.fn();
        }
    }

private:
    struct Event {
        double t;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.t != b.t) return a.t > b.t;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t seq_ = 0;
    double now_ = 0.0;
    std::vector<double> cpu_;
    std::vector<double> nic_;
    const LinkModel link_;
    Metrics& metrics_;
};

// ---------------------------------------------------------------------------
// three-phase PBFT instance over an explicit member set

struct PbftParams {
    std::vector<std::size_t> members;  // node indices
    std::size_t leader = 0;            // node index, must be a member
    std::uint64_t payload_bytes = 0;   // block carried by the pre-prepare
    std::size_t watch = 0;             // completion = this node commits
};

void run_pbft(Sim& sim, const Topology& topo, const PbftParams& params, double start_t,
              std::function<void(double)> on_watch_commit) {
    struct State {
        std::vector<int> prepares, commits;
        std::vector<char> has_block, sent_commit, committed;
        std::function<void(double)> done;
    };
    auto st = std::make_shared<State>();
    const std::size_t n = params.members.size();
    st->prepares.assign(n, 0);
    st->commits.assign(n, 0);
    st->has_block.assign(n, 0);
    st->sent_commit.assign(n, 0);
    st->committed.assign(n, 0);
    st->done = std::move(on_watch_commit);

    const int quorum = static_cast<int>(n) - static_cast<int>(n) / 3;

    auto local = std::make_shared<std::vector<std::size_t>>();  // node -> member slot
    std::size_t max_node = 0;
    for (std::size_t m : params.members) max_node = std::max(max_node, m);
    local->assign(max_node + 1, n);
    for (std::size_t i = 0; i < n; ++i) (*local)[params.members[i]] = i;

    auto broadcast = [&sim, &topo, params, local](std::size_t from, std::uint64_t bytes,
                                                  auto&& handler) {
        for (std::size_t to : params.members) {
            if (to == from) continue;
            sim.send(from, to, bytes, topo.effective_distance_m(from, to),
                     [handler, to](double t) { handler(to, t); });
        }
    };

    // handlers are shared so the lambdas can reference each other
    auto maybe_commit = std::make_shared<std::function<void(std::size_t, double)>>();
    auto maybe_send_commit = std::make_shared<std::function<void(std::size_t, double)>>();

    auto on_commit_msg = [st, local, params, quorum, maybe_commit](std::size_t node,
                                                                   double t) {
        ++st->commits[(*local)[node]];
        (*maybe_commit)(node, t);
    };

    *maybe_commit = [st, local, params, quorum](std::size_t node, double t) {
        const std::size_t i = (*local)[node];
        if (st->committed[i] || !st->sent_commit[i]) return;
        if (st->commits[i] + 1 < quorum) return;
        st->committed[i] = 1;
        if (node == params.watch && st->done) st->done(t);
    };

    *maybe_send_commit = [st, local, params, quorum, broadcast, on_commit_msg,
                          maybe_commit](std::size_t node, double t) {
        const std::size_t i = (*local)[node];
        if (st->sent_commit[i] || !st->has_block[i]) return;
        if (st->prepares[i] + 1 < quorum) return;
        st->sent_commit[i] = 1;
        broadcast(node, kCommitBytes, on_commit_msg);
        (*maybe_commit)(node, t);
    };

    auto on_prepare = [st, local, maybe_send_commit](std::size_t node, double t) {
        ++st->prepares[(*local)[node]];
        (*maybe_send_commit)(node, t);
    };

    auto on_preprepare = [st, local, broadcast, on_prepare, maybe_send_commit](
                             std::size_t node, double t) {
        const std::size_t i = (*local)[node];
        if (st->has_block[i]) return;
        st->has_block[i] = 1;
        broadcast(node, kPrepareBytes, on_prepare);
        (*maybe_send_commit)(node, t);
    };

    sim.at(start_t, [st, local, params, broadcast, on_preprepare, on_prepare,
                     maybe_send_commit, &sim]() {
        const std::size_t i = (*local)[params.leader];
        st->has_block[i] = 1;
        broadcast(params.leader, kPrePrepareBytes + params.payload_bytes, on_preprepare);
        broadcast(params.leader, kPrepareBytes, on_prepare);
        (*maybe_send_commit)(params.leader, sim.now());
    });
}

// ---------------------------------------------------------------------------
// workload: one block of Nr status transactions per region per round

spectrum::TxLists make_workload(const Topology& topo, std::uint32_t region, int round) {
    spectrum::TxLists lists;
    const int nr = topo.ng + topo.ns;
    for (int k = 0; k < nr; ++k) {
        domain::Transaction tx;
        tx.id = (static_cast<std::uint64_t>(region) << 40) |
                (static_cast<std::uint64_t>(round) << 16) | static_cast<std::uint64_t>(k);
        tx.kind = TaskKind::StatusTrans;
        tx.issuer = {region, ParticipantKind::BaseStation,
                     static_cast<std::uint32_t>(k % std::max(1, topo.ng - 1) + 1)};
        tx.timestamp = static_cast<double>(round);
        tx.size_bytes = domain::tx_size_for(TaskKind::StatusTrans);
        domain::StatusPayload p;
        p.user = tx.issuer;
        p.band = static_cast<std::uint32_t>(1000 + round * nr + k);
        p.to = (k % 2 == 0) ? domain::UserStatus::Seller : domain::UserStatus::Buyer;
        p.price_micro = 10 + k;
        p.duration_s = 60.0;
        tx.payload = p;
        lists[2].push_back(std::move(tx));
    }
    return lists;
}

std::uint64_t block_bytes(const Topology& topo) {
    return domain::kIntraHeaderBytes +
           static_cast<std::uint64_t>(topo.ng + topo.ns) *
               domain::tx_size_for(TaskKind::StatusTrans);
}

// scheduling driver shared by the per-region protocols
struct RoundTracker {
    int completed = 0;
    int attempts = 0;
    double round_start = 0.0;
};

// ---------------------------------------------------------------------------

struct PscdssRun {
    Sim& sim;
    const Topology& topo;
    const ScenarioConfig& cfg;
    Metrics& metrics;
    std::vector<consensus::RegionConsensus> engines;
    std::vector<RoundTracker> trackers;
    consensus::Tier2State tier2;

    struct Candidate {
        std::uint32_t region = 0;
        std::uint64_t bytes = 0;
        std::uint64_t txs = 0;
        double round_start = 0.0;
        domain::Block block;
        consensus::Replica source;
    };
    std::deque<Candidate> pending;
    bool boot_busy = false;

    PscdssRun(Sim& s, const Topology& t, const ScenarioConfig& c, Metrics& m)
        : sim(s), topo(t), cfg(c), metrics(m) {
        for (std::size_t r = 0; r < topo.regions.size(); ++r) {
            engines.emplace_back(static_cast<std::uint32_t>(r), topo.ng, topo.ns);
        }
        trackers.resize(topo.regions.size());
    }

    void start_round(std::uint32_t r, double t) {
        auto& tracker = trackers[r];
        if (tracker.completed >= cfg.rounds) return;
        if (tracker.attempts >= cfg.rounds * 10) return;  // give up under heavy faults
        ++tracker.attempts;
        tracker.round_start = t;

        mc::Rng rng(cfg.seed, 7000 + r, static_cast<std::uint64_t>(tracker.attempts));
        const auto faults =
            consensus::sample_faults(cfg.pf_g, cfg.pf_s, topo.ng, topo.ns, rng);
        const auto lists = make_workload(topo, r, tracker.completed);
        const auto outcome = engines[r].run_intra_round(lists, faults);
        if (outcome.status != consensus::IntraStatus::CommittedBlock ||
            !outcome.relayed_to_tier2) {
            ++metrics.failed_rounds;
            sim.at(t + cfg.retry_timeout_s, [this, r]() { start_round(r, sim.now()); });
            return;
        }

        PbftParams params;
        params.members = topo.regions[r].all();
        params.leader = topo.regions[r].regulator;
        params.watch = params.leader;
        params.payload_bytes = block_bytes(topo);
        Candidate cand;
        cand.region = r;
        cand.bytes = domain::kTier2HeaderBytes + block_bytes(topo);
        cand.txs = static_cast<std::uint64_t>(topo.ng + topo.ns);
        cand.round_start = t;
        cand.block = outcome.blocks.back();
        cand.source = engines[r].replicas()[outcome.committing_replicas.front()];
        run_pbft(sim, topo, params, t, [this, r, cand](double tc) {
            // regulator submits the committed block toward the bootstrapper
            sim.send(topo.regions[r].regulator, topo.bootstrapper, cand.bytes,
                     topo.tier2_path_m(r), [this, cand](double) {
                         pending.push_back(cand);
                         pump();
                     });
        });
    }

    void pump() {
        if (boot_busy || pending.empty()) return;
        boot_busy = true;
        const Candidate cand = pending.front();
        pending.pop_front();

        const int m = static_cast<int>(topo.regions.size());
        const int vote_quorum = m - m / 2;
        auto votes = std::make_shared<int>(0);
        auto confirmed = std::make_shared<bool>(false);
        for (std::uint32_t reg = 0; reg < topo.regions.size(); ++reg) {
            const double path = topo.tier2_path_m(reg);
            sim.send(topo.bootstrapper, topo.regions[reg].regulator,
                     cand.bytes, path, [this, reg, path, votes, confirmed, cand,
                                        vote_quorum](double) {
                         // healthy regulator verified the candidate; vote back
                         sim.send(topo.regions[reg].regulator, topo.bootstrapper,
                                  kVoteBytes, path,
                                  [this, votes, confirmed, cand, vote_quorum](double tv) {
                                      ++*votes;
                                      if (*votes == vote_quorum && !*confirmed) {
                                          *confirmed = true;
                                          commit_candidate(cand, tv);
                                      }
                                  });
                     });
        }
    }

    void commit_candidate(const Candidate& cand, double t) {
        // ledger + world-state propagation
        tier2.bl_pool.push_back({cand.block, cand.region, t});
        const auto inter = consensus::run_inter_round(
            tier2, std::vector<bool>(topo.regions.size(), false));
        (void)inter;
        for (auto& engine : engines) engine.adopt_global_commit(cand.block, cand.source);

        for (std::uint32_t reg = 0; reg < topo.regions.size(); ++reg) {
            sim.send(topo.bootstrapper, topo.regions[reg].regulator, kCommitBytes,
                     topo.tier2_path_m(reg), [this, reg, cand](double tc) {
                         if (reg != cand.region) return;
                         metrics.round_latencies_s.push_back(tc - cand.round_start);
                         metrics.committed_txs += cand.txs;
                         metrics.sim_end_s = std::max(metrics.sim_end_s, tc);
                         auto& tracker = trackers[reg];
                         ++tracker.completed;
                         tracker.attempts = 0;
                         start_round(reg, tc);
                     });
        }
        boot_busy = false;
        pump();
    }

    void start() {
        for (std::uint32_t r = 0; r < topo.regions.size(); ++r) start_round(r, 0.0);
    }
};

// ---------------------------------------------------------------------------

void run_single_chain(Sim& sim, const Topology& topo, const ScenarioConfig& cfg,
                      Metrics& metrics) {
    auto members = std::make_shared<std::vector<std::size_t>>();
    for (const auto& region : topo.regions) {
        const auto all = region.all();
        members->insert(members->end(), all.begin(), all.end());
    }
    auto round = std::make_shared<int>(0);
    auto start = std::make_shared<std::function<void(double)>>();
    *start = [&sim, &topo, &cfg, &metrics, members, round, start](double t) {
        if (*round >= cfg.rounds) return;
        ++*round;
        PbftParams params;
        params.members = *members;
        params.leader = topo.regions[0].regulator;
        params.watch = params.leader;
        params.payload_bytes = block_bytes(topo);
        run_pbft(sim, topo, params, t,
                 [&sim, &topo, &metrics, start, t](double tc) {
                     metrics.round_latencies_s.push_back(tc - t);
                     metrics.committed_txs += static_cast<std::uint64_t>(topo.ng + topo.ns);
                     metrics.sim_end_s = std::max(metrics.sim_end_s, tc);
                     (*start)(tc);
                 });
    };
    (*start)(0.0);
}

void run_cbrs(Sim& sim, const Topology& topo, const ScenarioConfig& cfg,
              Metrics& metrics) {
    // request -> SAS processing -> response, per region, no consensus
    auto remaining = std::make_shared<std::vector<int>>(topo.regions.size(), cfg.rounds);
    auto start = std::make_shared<std::function<void(std::uint32_t, double)>>();
    *start = [&sim, &topo, &metrics, remaining, start](std::uint32_t r, double t) {
        if ((*remaining)[r] <= 0) return;
        --(*remaining)[r];
        const auto& region = topo.regions[r];
        const std::size_t requester =
            region.grounds.size() > 1 ? region.grounds[1] : region.regulator;
        const std::size_t sas = region.regulator;
        const std::uint64_t batch = block_bytes(topo);
        sim.send(requester, sas, batch, topo.effective_distance_m(requester, sas),
                 [&sim, &topo, &metrics, remaining, start, r, requester, sas,
                  batch, t](double ta) {
                     // SAS decision costs one verify+generate pair
                     const double decided =
                         sim.occupy_cpu(sas, sim.link().verify_s() + sim.link().generate_s());
                     sim.at(decided, [&sim, &topo, &metrics, remaining, start, r,
                                      requester, sas, batch, t]() {
                         sim.send(sas, requester, batch,
                                  topo.effective_distance_m(sas, requester),
                                  [&topo, &metrics, remaining, start, r, t](double tc) {
                                      metrics.round_latencies_s.push_back(tc - t);
                                      metrics.committed_txs +=
                                          static_cast<std::uint64_t>(topo.ng + topo.ns);
                                      metrics.sim_end_s = std::max(metrics.sim_end_s, tc);
                                      (*start)(r, tc);
                                  });
                     });
                 });
    };
    for (std::uint32_t r = 0; r < topo.regions.size(); ++r) (*start)(r, 0.0);
}

struct MultiChainRun {
    Sim& sim;
    const Topology& topo;
    const ScenarioConfig& cfg;
    Metrics& metrics;
    std::vector<RoundTracker> trackers;

    struct Record {
        std::uint32_t region;
        double round_start;
    };
    std::deque<Record> pending;
    bool global_busy = false;
    std::vector<std::size_t> regulators;

    MultiChainRun(Sim& s, const Topology& t, const ScenarioConfig& c, Metrics& m)
        : sim(s), topo(t), cfg(c), metrics(m) {
        trackers.resize(topo.regions.size());
        for (const auto& region : topo.regions) regulators.push_back(region.regulator);
    }

    void start_round(std::uint32_t r, double t) {
        auto& tracker = trackers[r];
        if (tracker.completed >= cfg.rounds) return;
        tracker.round_start = t;
        PbftParams params;
        params.members = topo.regions[r].all();
        params.leader = topo.regions[r].regulator;
        params.watch = params.leader;
        params.payload_bytes = block_bytes(topo);
        run_pbft(sim, topo, params, t, [this, r](double tc) {
            // allocation settled locally; the record block now waits for the
            // regulator-only global chain
            pending.push_back({r, trackers[r].round_start});
            (void)tc;
            pump();
        });
    }

    void pump() {
        if (global_busy || pending.empty()) return;
        global_busy = true;
        const Record rec = pending.front();
        pending.pop_front();
        PbftParams params;
        params.members = regulators;
        params.leader = regulators[0];
        params.watch = regulators[rec.region];
        params.payload_bytes =
            domain::kTier2HeaderBytes +
            static_cast<std::uint64_t>(topo.ng + topo.ns) *
                domain::tx_size_for(TaskKind::ResRecord);
        run_pbft(sim, topo, params, sim.now(), [this, rec](double tc) {
            metrics.round_latencies_s.push_back(tc - rec.round_start);
            metrics.committed_txs += static_cast<std::uint64_t>(topo.ng + topo.ns);
            metrics.sim_end_s = std::max(metrics.sim_end_s, tc);
            auto& tracker = trackers[rec.region];
            ++tracker.completed;
            start_round(rec.region, tc);
            global_busy = false;
            pump();
        });
    }

    void start() {
        for (std::uint32_t r = 0; r < topo.regions.size(); ++r) start_round(r, 0.0);
    }
};

void run_cross_chain(Sim& sim, const Topology& topo, const ScenarioConfig& cfg,
                     Metrics& metrics) {
    // two-phase confirmation between two local chains through a satellite
    const std::uint32_t a = 0;
    const std::uint32_t b = static_cast<std::uint32_t>(topo.regions.size()) - 1;
    const double relay = topo.regions.size() > 1 ? topo.relay_path_m(a, b) : 0.0;
    auto round = std::make_shared<int>(0);
    auto start = std::make_shared<std::function<void(double)>>();
    *start = [&sim, &topo, &cfg, &metrics, a, b, relay, round, start](double t) {
        if (*round >= cfg.rounds) return;
        ++*round;
        PbftParams in_a;
        in_a.members = topo.regions[a].all();
        in_a.leader = topo.regions[a].regulator;
        in_a.watch = in_a.leader;
        in_a.payload_bytes = block_bytes(topo);
        run_pbft(sim, topo, in_a, t, [&sim, &topo, &metrics, a, b, relay, start,
                                      t](double ta) {
            const std::size_t reg_a = topo.regions[a].regulator;
            const std::size_t reg_b = topo.regions[b].regulator;
            // phase 1: lock the transfer on chain B
            sim.send(reg_a, reg_b, block_bytes(topo), relay, [&sim, &topo, &metrics, a,
                                                              b, relay, start, t, reg_a,
                                                              reg_b](double) {
                PbftParams in_b;
                in_b.members = topo.regions[b].all();
                in_b.leader = topo.regions[b].regulator;
                in_b.watch = in_b.leader;
                in_b.payload_bytes = block_bytes(topo);
                run_pbft(sim, topo, in_b, sim.now(), [&sim, &topo, &metrics, a, relay,
                                                      start, t, reg_a, reg_b](double tb) {
                    // phase 2: vote back, commit over, final ack
                    sim.send(reg_b, reg_a, kCommitBytes, relay, [&sim, &metrics, &topo,
                                                                 relay, start, t, reg_a,
                                                                 reg_b](double) {
                        sim.send(reg_a, reg_b, kCommitBytes, relay,
                                 [&sim, &metrics, &topo, relay, start, t, reg_a,
                                  reg_b](double) {
                                     sim.send(reg_b, reg_a, kCommitBytes, relay,
                                              [&metrics, &topo, start, t](double tc) {
                                                  metrics.round_latencies_s.push_back(tc - t);
                                                  metrics.committed_txs +=
                                                      static_cast<std::uint64_t>(topo.ng +
                                                                                 topo.ns);
                                                  metrics.sim_end_s =
                                                      std::max(metrics.sim_end_s, tc);
                                                  (*start)(tc);
                                              });
                                 });
                    });
                });
            });
        });
    };
    (*start)(0.0);
}

}  // namespace

Metrics run_scenario(const Topology& topology, const ScenarioConfig& cfg) {
    Metrics metrics;
    Sim sim(topology.nodes.size(), cfg.link, metrics);

    PscdssRun pscdss(sim, topology, cfg, metrics);
    MultiChainRun multi(sim, topology, cfg, metrics);
    switch (cfg.protocol) {
        case Protocol::PSCDSS: pscdss.start(); break;
        case Protocol::CBRS: run_cbrs(sim, topology, cfg, metrics); break;
        case Protocol::SingleChain: run_single_chain(sim, topology, cfg, metrics); break;
        case Protocol::MultiChain: multi.start(); break;
        case Protocol::CrossChain: run_cross_chain(sim, topology, cfg, metrics); break;
    }
    sim.run();
    return metrics;
}

}  // namespace pscdss::netsim
