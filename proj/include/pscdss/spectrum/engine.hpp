#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pscdss/domain/types.hpp"

namespace pscdss::spectrum {

using domain::Block;
using domain::GeoPoint;
using domain::ParticipantId;
using domain::Transaction;
using domain::TxPools;
using domain::WorldState;

// Ordered per-pool transaction lists; each non-empty list becomes one block.
struct TxLists {
    std::array<std::vector<Transaction>, 3> lists;

    std::vector<Transaction>& operator[](int i) { return lists[static_cast<std::size_t>(i - 1)]; }
    const std::vector<Transaction>& operator[](int i) const {
        return lists[static_cast<std::size_t>(i - 1)];
    }
};

struct SharedSpecEntry {
    std::uint32_t band = 0;
    ParticipantId seller;
    std::int64_t ask_micro = 0;
    GeoPoint location;
};

struct AwaitTerEntry {
    ParticipantId buyer;
    std::int64_t bid_micro = 0;
    GeoPoint location;
    std::uint32_t demand = 1;
    double duration_s = 0.0;
};

using SharedSpecList = std::vector<SharedSpecEntry>;
using AwaitTerList = std::vector<AwaitTerEntry>;

struct Assignment {
    std::uint32_t band = 0;
    ParticipantId buyer;
    ParticipantId seller;
    std::int64_t price_micro = 0;
};

struct SpecAlloSolution {
    std::vector<Assignment> assignments;        // each band at most once
    std::vector<ParticipantId> rejected;        // buyers left unserved
    double objective = 0.0;                     // revenue or aggregate interference
};

struct SpecRecEntry {
    std::uint64_t allo_ref = 0;
    std::string scheme;
    std::vector<Assignment> assignments;
    std::int64_t total_paid_micro = 0;
    std::string post_state;  // spectrum situation after applying the solution
};

using SpecRecList = std::vector<SpecRecEntry>;

struct Diagnostic {
    std::uint64_t tx_id = 0;
    std::string reason;
};

// --- intra-round pipeline -------------------------------------------------

struct FilterResult {
    TxPools pools;
    std::vector<Diagnostic> rejected;
};

FilterResult filter_transactions(const std::vector<Transaction>& batch);

struct OrderResult {
    TxLists lists;
    std::optional<Block> candidate;
    std::vector<Transaction> deferred;  // returned to their pool, original timestamps
    std::vector<Diagnostic> diagnostics;
};

OrderResult order_transactions(const TxPools& pools, const std::vector<Block>& bl_pool);

struct ExecE2Result {
    Block region_block;
    SharedSpecList shared;
    AwaitTerList awaiting;
    std::vector<Diagnostic> rejected;
};

struct ExecE3Result {
    Transaction allo_result;
    SpecRecList rec_list;
};

struct ExecE1Result {
    Block block;
    int regulation_conflicts = 0;
};

// Func.E1: global regulation transactions, executed by regulators in tier 2.
ExecE1Result exec_func_e1(const Block& candidate, WorldState& state);

// Func.E2: status transitions (list 2) or the reset tail of list 3; in the
// list-3 branch the allocation and record results are spliced in first.
ExecE2Result exec_func_e2(const TxLists& lists, const std::optional<Transaction>& rec_result,
                          const std::optional<Transaction>& allo_result, WorldState& state);

// Func.E3: run the configured scheme over the shared/awaiting lists and
// apply the solution (leases, payments).
ExecE3Result exec_func_e3(const TxLists& lists, const SharedSpecList& shared,
                          const AwaitTerList& awaiting, const std::string& scheme,
                          WorldState& state);

struct ExecE4Result {
    Transaction rec_result;
    std::vector<Diagnostic> deferred;
};

// Func.E4: match record transactions with the allocation audit trail.
ExecE4Result exec_func_e4(const TxLists& lists, const SpecRecList& rec_list,
                          WorldState& state);

// --- allocation schemes ----------------------------------------------------

struct SchemeContext {
    // incumbents per band, for interference feasibility; read from the
    // world state's band registry
    const WorldState* state = nullptr;
    double fc_hz = 2e9;
    double incumbent_threshold_dbm = -100.0;
    double tx_power_dbm = 33.0;
};

SpecAlloSolution scheme_max_revenue(const SharedSpecList& shared,
                                    const AwaitTerList& awaiting,
                                    const SchemeContext& ctx);

SpecAlloSolution scheme_min_interference(const SharedSpecList& shared,
                                         const AwaitTerList& awaiting,
                                         const SchemeContext& ctx);

SpecAlloSolution run_scheme(const std::string& scheme, const SharedSpecList& shared,
                            const AwaitTerList& awaiting, const SchemeContext& ctx);

// received power (W) at `to` from a transmitter at `from`, free-space at fc
double received_power_w(const GeoPoint& from, const GeoPoint& to, double tx_power_dbm,
                        double fc_hz);

// great-circle distance between two points on the reference Earth sphere
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

std::vector<std::uint8_t> canonical_bytes(const SpecAlloSolution& solution);

}  // namespace pscdss::spectrum
