#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pscdss::domain {

enum class ParticipantKind : std::uint8_t { Regulator = 0, BaseStation, Satellite, Disseminator };

struct ParticipantId {
    std::uint32_t region = 0;
    ParticipantKind kind = ParticipantKind::Regulator;
    std::uint32_t ordinal = 0;

    auto operator<=>(const ParticipantId&) const = default;

    std::uint64_t key() const {
        return (static_cast<std::uint64_t>(region) << 40) |
               (static_cast<std::uint64_t>(kind) << 32) | ordinal;
    }
};

enum class UserStatus : std::uint8_t { Common = 0, Buyer, Seller };

// StatusReset is the regulator-issued Task-2 variant that closes a round.
enum class TaskKind : std::uint8_t {
    Global = 0,      // Task-1
    StatusTrans,     // Task-2
    SpecAllo,        // Task-3
    ResRecord,       // Task-4
    StatusReset      // Task-2 (reset)
};

// Transaction wire sizes per task family, bytes.
inline constexpr std::uint32_t tx_size_for(TaskKind kind) {
    switch (kind) {
        case TaskKind::Global: return 700;
        case TaskKind::StatusTrans: return 390;
        case TaskKind::SpecAllo: return 200;
        case TaskKind::ResRecord: return 650;
        case TaskKind::StatusReset: return 390;
    }
    return 0;
}

struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;

    auto operator<=>(const GeoPoint&) const = default;
};

struct GlobalPayload {
    // regulation store entries; schema intentionally opaque key-value
    std::vector<std::pair<std::string, std::string>> regulations;
};

struct StatusPayload {
    ParticipantId user;
    std::uint32_t band = 0;
    UserStatus from = UserStatus::Common;
    UserStatus to = UserStatus::Common;
    std::int64_t price_micro = 0;   // ask for sellers, bid for buyers
    double duration_s = 0.0;
    std::uint32_t demand = 1;       // bands wanted (buyers)
    GeoPoint location;
};

struct AlloPayload {
    std::string scheme;  // "max-revenue" | "min-interference"
    std::uint64_t round_ref = 0;
};

struct RecordPayload {
    std::uint64_t allo_ref = 0;  // id of the SpecAllo transaction it documents
};

struct ResetPayload {
    std::uint64_t allo_ref = 0;
    std::vector<std::pair<ParticipantId, std::uint32_t>> targets;  // (user, band)
};

// Execution results that replace raw transactions inside committed blocks.
struct ResultPayload {
    std::string summary;
    std::vector<std::pair<std::string, std::string>> fields;
};

using Payload = std::variant<GlobalPayload, StatusPayload, AlloPayload,
                             RecordPayload, ResetPayload, ResultPayload>;

struct Transaction {
    std::uint64_t id = 0;
    TaskKind kind = TaskKind::Global;
    bool cross_region = false;
    bool is_result = false;
    ParticipantId issuer;
    double timestamp = 0.0;  // simulated seconds
    std::uint32_t size_bytes = 0;
    Payload payload;
};

inline constexpr std::uint32_t kIntraHeaderBytes = 39;
inline constexpr std::uint32_t kTier2HeaderBytes = 321;

struct BlockHeader {
    std::uint64_t height = 0;
    std::uint64_t parent_hash = 0;
    std::uint32_t region = 0;
    std::uint32_t header_size_bytes = kIntraHeaderBytes;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> txs;
    std::uint64_t hash = 0;

    std::uint64_t payload_bytes() const {
        std::uint64_t total = header.header_size_bytes;
        for (const auto& tx : txs) total += tx.size_bytes;
        return total;
    }
};

struct BandInfo {
    ParticipantId owner;
    std::optional<ParticipantId> lessee;
    double lease_expiry_s = 0.0;
    double tx_power_dbm = 0.0;
    std::vector<GeoPoint> incumbents;  // terminals currently using the band
};

// Replicated registry. Currency is integer micro-units; conservation checks
// stay exact.
struct WorldState {
    std::map<std::uint32_t, BandInfo> bands;
    std::map<std::pair<std::uint64_t, std::uint32_t>, UserStatus> statuses;  // (user key, band)
    std::map<std::uint64_t, std::int64_t> balances_micro;                    // user key
    std::map<std::string, std::string> regulations;
    std::vector<std::string> audit_log;

    UserStatus status_of(const ParticipantId& user, std::uint32_t band) const {
        const auto it = statuses.find({user.key(), band});
        return it == statuses.end() ? UserStatus::Common : it->second;
    }

    std::int64_t balance_of(const ParticipantId& user) const {
        const auto it = balances_micro.find(user.key());
        return it == balances_micro.end() ? 0 : it->second;
    }

    std::int64_t total_currency() const {
        std::int64_t total = 0;
        for (const auto& [_, v] : balances_micro) total += v;
        return total;
    }
};

struct TxPools {
    std::deque<Transaction> pool1;  // global + cross-region tasks
    std::deque<Transaction> pool2;  // status transitions
    std::deque<Transaction> pool3;  // allocation / record / reset pipeline

    std::size_t total() const { return pool1.size() + pool2.size() + pool3.size(); }
};

}  // namespace pscdss::domain
