#include "pscdss/spectrum/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "pscdss/analytics/units.hpp"
#include "pscdss/domain/serde.hpp"
#include "pscdss/domain/validate.hpp"

namespace pscdss::spectrum {

using domain::ByteWriter;
using domain::ResultPayload;
using domain::TaskKind;
using domain::UserStatus;

namespace {

bool fcfs_before(const Transaction& a, const Transaction& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.id < b.id;  // FCFS ties broken by id
}

Transaction make_result(TaskKind kind, const Transaction& origin, ResultPayload payload) {
    Transaction tx;
    tx.id = origin.id;
    tx.kind = kind;
    tx.is_result = true;
    tx.issuer = origin.issuer;
    tx.timestamp = origin.timestamp;
    tx.size_bytes = domain::tx_size_for(kind);
    tx.payload = std::move(payload);
    return tx;
}

std::string describe_status(UserStatus s) {
    switch (s) {
        case UserStatus::Common: return "common";
        case UserStatus::Buyer: return "buyer";
        case UserStatus::Seller: return "seller";
    }
    return "?";
}

}  // namespace

FilterResult filter_transactions(const std::vector<Transaction>& batch) {
    FilterResult result;
    for (const auto& tx : batch) {
        switch (tx.kind) {
            case TaskKind::Global:
                result.pools.pool1.push_back(tx);
                break;
            case TaskKind::StatusTrans:
            case TaskKind::SpecAllo:
            case TaskKind::ResRecord:
            case TaskKind::StatusReset:
                if (tx.cross_region) {
                    // cross-region sharing runs through tier 2
                    result.pools.pool1.push_back(tx);
                } else if (tx.kind == TaskKind::StatusTrans) {
                    result.pools.pool2.push_back(tx);
                } else {
                    result.pools.pool3.push_back(tx);
                }
                break;
            default:
                result.rejected.push_back({tx.id, "unknown-task-kind"});
                break;
        }
    }
    return result;
}

OrderResult order_transactions(const TxPools& pools, const std::vector<Block>& bl_pool) {
    OrderResult out;

    std::vector<Transaction> list1(pools.pool1.begin(), pools.pool1.end());
    std::sort(list1.begin(), list1.end(), fcfs_before);
    out.lists[1] = std::move(list1);

    std::vector<Transaction> list2(pools.pool2.begin(), pools.pool2.end());
    std::sort(list2.begin(), list2.end(), fcfs_before);
    out.lists[2] = std::move(list2);

    // list 3: allocation transactions FCFS, each trailed by its matching
    // record and reset transactions
    std::vector<Transaction> allo;
    std::map<std::uint64_t, Transaction> records;
    std::map<std::uint64_t, Transaction> resets;
    for (const auto& tx : pools.pool3) {
        if (tx.kind == TaskKind::SpecAllo) {
            allo.push_back(tx);
        } else if (tx.kind == TaskKind::ResRecord) {
            records.emplace(std::get<domain::RecordPayload>(tx.payload).allo_ref, tx);
        } else if (tx.kind == TaskKind::StatusReset) {
            resets.emplace(std::get<domain::ResetPayload>(tx.payload).allo_ref, tx);
        }
    }
    std::sort(allo.begin(), allo.end(), fcfs_before);
    for (const auto& tx : allo) {
        const auto rec = records.find(tx.id);
        const auto reset = resets.find(tx.id);
        if (rec == records.end() || reset == resets.end()) {
            out.diagnostics.push_back({tx.id, "allocation-missing-record-or-reset"});
            out.deferred.push_back(tx);
            continue;
        }
        out.lists[3].push_back(tx);
        out.lists[3].push_back(rec->second);
        out.lists[3].push_back(reset->second);
        records.erase(rec);
        resets.erase(reset);
    }
    for (auto& [ref, tx] : records) {
        out.diagnostics.push_back({tx.id, "record-without-allocation"});
        out.deferred.push_back(tx);
    }
    for (auto& [ref, tx] : resets) {
        out.diagnostics.push_back({tx.id, "reset-without-allocation"});
        out.deferred.push_back(tx);
    }

    if (!bl_pool.empty()) {
        const Block* head = &bl_pool.front();
        for (const auto& b : bl_pool) {
            const auto key = [](const Block& blk) {
                double t = blk.txs.empty() ? 0.0 : blk.txs.front().timestamp;
                return std::pair<double, std::uint64_t>(t, blk.hash);
            };
            if (key(b) < key(*head)) head = &b;
        }
        out.candidate = *head;
    }
    return out;
}

ExecE1Result exec_func_e1(const Block& candidate, WorldState& state) {
    ExecE1Result result{candidate, 0};
    bool mutated = false;
    std::set<std::string> seen_keys;
    for (auto& tx : result.block.txs) {
        if (tx.kind != TaskKind::Global || tx.is_result) continue;
        const auto& payload = std::get<domain::GlobalPayload>(tx.payload);
        ResultPayload applied;
        applied.summary = "regulations-applied";
        for (const auto& [key, value] : payload.regulations) {
            if (!seen_keys.insert(key).second) ++result.regulation_conflicts;
            state.regulations[key] = value;  // last writer wins
            applied.fields.emplace_back(key, value);
        }
        tx = make_result(TaskKind::Global, tx, std::move(applied));
        mutated = true;
    }
    if (mutated) result.block.hash = domain::hash_block(result.block);
    return result;
}

ExecE2Result exec_func_e2(const TxLists& lists, const std::optional<Transaction>& rec_result,
                          const std::optional<Transaction>& allo_result, WorldState& state) {
    ExecE2Result out;

    if (!lists[2].empty()) {
        for (const auto& tx : lists[2]) {
            if (tx.is_result || tx.kind != TaskKind::StatusTrans) continue;
            const auto& p = std::get<domain::StatusPayload>(tx.payload);
            const UserStatus current = state.status_of(p.user, p.band);
            // SC.StaFunc guard: status must step through common
            if (current != UserStatus::Common && p.to != UserStatus::Common &&
                p.to != current) {
                out.rejected.push_back({tx.id, "transition-skips-common"});
                continue;
            }
            if (p.to == UserStatus::Seller) {
                out.shared.push_back({p.band, p.user, p.price_micro, p.location});
            } else if (p.to == UserStatus::Buyer) {
                out.awaiting.push_back({p.user, p.price_micro, p.location, p.demand,
                                        p.duration_s});
            }
            state.statuses[{p.user.key(), p.band}] = p.to;
            ResultPayload r;
            r.summary = "status-" + describe_status(p.to);
            r.fields.emplace_back("band", std::to_string(p.band));
            r.fields.emplace_back("from", describe_status(current));
            r.fields.emplace_back("to", describe_status(p.to));
            out.region_block.txs.push_back(make_result(TaskKind::StatusTrans, tx, std::move(r)));
        }
        return out;
    }

    if (!lists[3].empty()) {
        if (allo_result) out.region_block.txs.push_back(*allo_result);
        if (rec_result) out.region_block.txs.push_back(*rec_result);
        for (const auto& tx : lists[3]) {
            if (tx.is_result || tx.kind != TaskKind::StatusReset) continue;
            const auto& p = std::get<domain::ResetPayload>(tx.payload);
            ResultPayload r;
            r.summary = "status-reset";
            for (const auto& [user, band] : p.targets) {
                state.statuses[{user.key(), band}] = UserStatus::Common;
                r.fields.emplace_back("user", std::to_string(user.key()));
            }
            out.region_block.txs.push_back(make_result(TaskKind::StatusReset, tx, std::move(r)));
        }
    }
    return out;
}

ExecE3Result exec_func_e3(const TxLists& lists, const SharedSpecList& shared,
                          const AwaitTerList& awaiting, const std::string& scheme,
                          WorldState& state) {
    ExecE3Result out;

    std::vector<Transaction> allo_txs;
    for (const auto& tx : lists[3]) {
        if (!tx.is_result && tx.kind == TaskKind::SpecAllo) allo_txs.push_back(tx);
    }

    SchemeContext ctx;
    ctx.state = &state;
    if (const auto it = state.regulations.find("max-interference-dbm");
        it != state.regulations.end()) {
        ctx.incumbent_threshold_dbm = std::stod(it->second);
    }
    if (const auto it = state.regulations.find("fc-hz"); it != state.regulations.end()) {
        ctx.fc_hz = std::stod(it->second);
    }

    const SpecAlloSolution solution = run_scheme(scheme, shared, awaiting, ctx);

    // SC.AlloFunc: apply leases and settle payments
    double now = 0.0;
    for (const auto& tx : allo_txs) now = std::max(now, tx.timestamp);
    std::int64_t total_paid = 0;
    for (const auto& a : solution.assignments) {
        const auto winner = std::find_if(awaiting.begin(), awaiting.end(),
                                         [&](const AwaitTerEntry& w) { return w.buyer == a.buyer; });
        auto& band = state.bands[a.band];
        if (band.owner == ParticipantId{}) band.owner = a.seller;
        band.lessee = a.buyer;
        band.lease_expiry_s = now + (winner != awaiting.end() ? winner->duration_s : 0.0);
        if (winner != awaiting.end()) band.incumbents.push_back(winner->location);
        state.balances_micro[a.buyer.key()] -= a.price_micro;
        state.balances_micro[a.seller.key()] += a.price_micro;
        total_paid += a.price_micro;
    }

    for (const auto& tx : allo_txs) {
        SpecRecEntry entry;
        entry.allo_ref = tx.id;
        entry.scheme = scheme;
        entry.assignments = solution.assignments;
        entry.total_paid_micro = total_paid;
        std::ostringstream post;
        post << "bands-leased=" << solution.assignments.size()
             << " rejected=" << solution.rejected.size();
        entry.post_state = post.str();
        out.rec_list.push_back(std::move(entry));
    }

    ResultPayload r;
    r.summary = solution.assignments.empty() ? "allocation-empty" : "allocation-applied";
    r.fields.emplace_back("scheme", scheme);
    r.fields.emplace_back("assignments", std::to_string(solution.assignments.size()));
    for (const auto& a : solution.assignments) {
        r.fields.emplace_back("band-" + std::to_string(a.band),
                              std::to_string(a.price_micro));
    }
    Transaction origin;
    if (!allo_txs.empty()) {
        origin = allo_txs.front();
    } else {
        origin.kind = TaskKind::SpecAllo;
        origin.size_bytes = domain::tx_size_for(TaskKind::SpecAllo);
    }
    out.allo_result = make_result(TaskKind::SpecAllo, origin, std::move(r));
    return out;
}

ExecE4Result exec_func_e4(const TxLists& lists, const SpecRecList& rec_list,
                          WorldState& state) {
    ExecE4Result out;

    std::vector<Transaction> record_txs;
    for (const auto& tx : lists[3]) {
        if (!tx.is_result && tx.kind == TaskKind::ResRecord) record_txs.push_back(tx);
    }

    ResultPayload r;
    r.summary = record_txs.empty() ? "record-empty" : "record-applied";
    std::int64_t delta_sum = 0;
    Transaction origin;
    origin.kind = TaskKind::ResRecord;
    origin.size_bytes = domain::tx_size_for(TaskKind::ResRecord);
    for (const auto& tx : record_txs) {
        const auto ref = std::get<domain::RecordPayload>(tx.payload).allo_ref;
        const auto match =
            std::find_if(rec_list.begin(), rec_list.end(),
                         [&](const SpecRecEntry& e) { return e.allo_ref == ref; });
        if (match == rec_list.end()) {
            out.deferred.push_back({tx.id, "record-unmatched"});
            continue;
        }
        origin = tx;
        for (const auto& a : match->assignments) {
            std::ostringstream line;
            line << "band=" << a.band << " price=" << a.price_micro
                 << " buyer=" << a.buyer.key() << " seller=" << a.seller.key();
            state.audit_log.push_back(line.str());
            r.fields.emplace_back("band", std::to_string(a.band));
            r.fields.emplace_back("price", std::to_string(a.price_micro));
            r.fields.emplace_back("buyer-delta", std::to_string(-a.price_micro));
            r.fields.emplace_back("seller-delta", std::to_string(a.price_micro));
            delta_sum += -a.price_micro + a.price_micro;
        }
        r.fields.emplace_back("scheme", match->scheme);
        r.fields.emplace_back("post", match->post_state);
    }
    r.fields.emplace_back("asset-delta-sum", std::to_string(delta_sum));
    out.rec_result = make_result(TaskKind::ResRecord, origin, std::move(r));
    return out;
}

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
    constexpr double kEarthRadius = 6371e3;
    const double lat1 = a.lat_deg * std::numbers::pi / 180.0;
    const double lat2 = b.lat_deg * std::numbers::pi / 180.0;
    const double dlat = lat2 - lat1;
    const double dlon = (b.lon_deg - a.lon_deg) * std::numbers::pi / 180.0;
    const double s = std::sin(0.5 * dlat) * std::sin(0.5 * dlat) +
                     std::cos(lat1) * std::cos(lat2) * std::sin(0.5 * dlon) *
                         std::sin(0.5 * dlon);
    return 2.0 * kEarthRadius * std::asin(std::min(1.0, std::sqrt(s)));
}

double received_power_w(const GeoPoint& from, const GeoPoint& to, double tx_power_dbm,
                        double fc_hz) {
    const double d = std::max(great_circle_m(from, to), 1.0);
    const double aperture = analytics::kLightSpeed / (4.0 * std::numbers::pi * fc_hz);
    return analytics::dbm_to_watt(tx_power_dbm) * (aperture / d) * (aperture / d);
}

namespace {

const std::vector<GeoPoint>* incumbents_for(const SchemeContext& ctx, std::uint32_t band) {
    if (ctx.state == nullptr) return nullptr;
    const auto it = ctx.state->bands.find(band);
    return it == ctx.state->bands.end() ? nullptr : &it->second.incumbents;
}

bool interference_feasible(const SchemeContext& ctx, const AwaitTerEntry& buyer,
                           std::uint32_t band) {
    const auto* incumbents = incumbents_for(ctx, band);
    if (incumbents == nullptr) return true;
    const double threshold_w = analytics::dbm_to_watt(ctx.incumbent_threshold_dbm);
    for (const auto& inc : *incumbents) {
        if (received_power_w(buyer.location, inc, ctx.tx_power_dbm, ctx.fc_hz) >
            threshold_w) {
            return false;
        }
    }
    return true;
}

double interference_contribution(const SchemeContext& ctx, const AwaitTerEntry& buyer,
                                 std::uint32_t band) {
    const auto* incumbents = incumbents_for(ctx, band);
    if (incumbents == nullptr || incumbents->empty()) return 0.0;
    double total = 0.0;
    for (const auto& inc : *incumbents) {
        total += received_power_w(buyer.location, inc, ctx.tx_power_dbm, ctx.fc_hz);
    }
    return total;
}

}  // namespace

SpecAlloSolution scheme_max_revenue(const SharedSpecList& shared,
                                    const AwaitTerList& awaiting,
                                    const SchemeContext& ctx) {
    SpecAlloSolution solution;
    if (shared.empty() || awaiting.empty()) return solution;

    std::vector<const AwaitTerEntry*> buyers;
    for (const auto& b : awaiting) buyers.push_back(&b);
    std::sort(buyers.begin(), buyers.end(), [](const auto* a, const auto* b) {
        if (a->bid_micro != b->bid_micro) return a->bid_micro > b->bid_micro;
        return a->buyer.key() < b->buyer.key();  // lower id wins ties
    });

    std::vector<bool> taken(shared.size(), false);
    for (const auto* buyer : buyers) {
        std::uint32_t granted = 0;
        for (std::size_t i = 0; i < shared.size() && granted < buyer->demand; ++i) {
            if (taken[i]) continue;
            if (buyer->bid_micro < shared[i].ask_micro) continue;
            if (!interference_feasible(ctx, *buyer, shared[i].band)) continue;
            taken[i] = true;
            ++granted;
            solution.assignments.push_back({shared[i].band, buyer->buyer,
                                            shared[i].seller, buyer->bid_micro});
            solution.objective += static_cast<double>(buyer->bid_micro);
        }
        if (granted == 0) solution.rejected.push_back(buyer->buyer);
    }
    return solution;
}

SpecAlloSolution scheme_min_interference(const SharedSpecList& shared,
                                         const AwaitTerList& awaiting,
                                         const SchemeContext& ctx) {
    SpecAlloSolution solution;
    if (shared.empty() || awaiting.empty()) return solution;

    std::vector<bool> taken(shared.size(), false);
    std::vector<const AwaitTerEntry*> buyers;
    for (const auto& b : awaiting) buyers.push_back(&b);
    std::sort(buyers.begin(), buyers.end(), [](const auto* a, const auto* b) {
        return a->buyer.key() < b->buyer.key();
    });

    for (const auto* buyer : buyers) {
        std::uint32_t granted = 0;
        // rank this buyer's feasible bands by interference contribution
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t i = 0; i < shared.size(); ++i) {
            if (taken[i]) continue;
            if (buyer->bid_micro < shared[i].ask_micro) continue;
            if (!interference_feasible(ctx, *buyer, shared[i].band)) continue;
            ranked.emplace_back(interference_contribution(ctx, *buyer, shared[i].band), i);
        }
        std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return shared[a.second].band < shared[b.second].band;  // lowest band id
        });
        for (const auto& [contribution, i] : ranked) {
            if (granted >= buyer->demand) break;
            taken[i] = true;
            ++granted;
            solution.assignments.push_back({shared[i].band, buyer->buyer,
                                            shared[i].seller, buyer->bid_micro});
            solution.objective += contribution;
        }
        if (granted == 0) solution.rejected.push_back(buyer->buyer);
    }
    return solution;
}

SpecAlloSolution run_scheme(const std::string& scheme, const SharedSpecList& shared,
                            const AwaitTerList& awaiting, const SchemeContext& ctx) {
    if (scheme == "max-revenue") return scheme_max_revenue(shared, awaiting, ctx);
    if (scheme == "min-interference") return scheme_min_interference(shared, awaiting, ctx);
    throw std::invalid_argument("unknown scheme: " + scheme);
}

std::vector<std::uint8_t> canonical_bytes(const SpecAlloSolution& solution) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(solution.assignments.size()));
    for (const auto& a : solution.assignments) {
        w.u32(a.band);
        domain::serialize(w, a.buyer);
        domain::serialize(w, a.seller);
        w.i64(a.price_micro);
    }
    w.u32(static_cast<std::uint32_t>(solution.rejected.size()));
    for (const auto& r : solution.rejected) domain::serialize(w, r);
    w.f64(solution.objective);
    return w.bytes();
}

}  // namespace pscdss::spectrum
