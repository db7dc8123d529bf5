#include "pscdss/domain/serde.hpp"
#include "pscdss/domain/validate.hpp"

#include <json.hpp>

namespace pscdss::domain {

namespace {

struct PayloadWriter {
    ByteWriter& w;

    void operator()(const GlobalPayload& p) const {
        w.u8(0);
        w.u32(static_cast<std::uint32_t>(p.regulations.size()));
        for (const auto& [k, v] : p.regulations) {
            w.str(k);
            w.str(v);
        }
    }
    void operator()(const StatusPayload& p) const {
        w.u8(1);
        serialize(w, p.user);
        w.u32(p.band);
        w.u8(static_cast<std::uint8_t>(p.from));
        w.u8(static_cast<std::uint8_t>(p.to));
        w.i64(p.price_micro);
        w.f64(p.duration_s);
        w.u32(p.demand);
        w.f64(p.location.lat_deg);
        w.f64(p.location.lon_deg);
    }
    void operator()(const AlloPayload& p) const {
        w.u8(2);
        w.str(p.scheme);
        w.u64(p.round_ref);
    }
    void operator()(const RecordPayload& p) const {
        w.u8(3);
        w.u64(p.allo_ref);
    }
    void operator()(const ResetPayload& p) const {
        w.u8(4);
        w.u64(p.allo_ref);
        w.u32(static_cast<std::uint32_t>(p.targets.size()));
        for (const auto& [user, band] : p.targets) {
            serialize(w, user);
            w.u32(band);
        }
    }
    void operator()(const ResultPayload& p) const {
        w.u8(5);
        w.str(p.summary);
        w.u32(static_cast<std::uint32_t>(p.fields.size()));
        for (const auto& [k, v] : p.fields) {
            w.str(k);
            w.str(v);
        }
    }
};

}  // namespace

void serialize(ByteWriter& w, const ParticipantId& id) {
    w.u32(id.region);
    w.u8(static_cast<std::uint8_t>(id.kind));
    w.u32(id.ordinal);
}

void serialize(ByteWriter& w, const Transaction& tx) {
    w.u64(tx.id);
    w.u8(static_cast<std::uint8_t>(tx.kind));
    w.u8(tx.cross_region ? 1 : 0);
    w.u8(tx.is_result ? 1 : 0);
    serialize(w, tx.issuer);
    w.f64(tx.timestamp);
    w.u32(tx.size_bytes);
    std::visit(PayloadWriter{w}, tx.payload);
}

void serialize(ByteWriter& w, const Block& block) {
    w.u64(block.header.height);
    w.u64(block.header.parent_hash);
    w.u32(block.header.region);
    w.u32(block.header.header_size_bytes);
    w.u32(static_cast<std::uint32_t>(block.txs.size()));
    for (const auto& tx : block.txs) serialize(w, tx);
}

std::vector<std::uint8_t> canonical_bytes(const Transaction& tx) {
    ByteWriter w;
    serialize(w, tx);
    return w.bytes();
}

std::vector<std::uint8_t> canonical_bytes(const Block& block) {
    ByteWriter w;
    serialize(w, block);
    return w.bytes();
}

std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t hash_block(const Block& block) { return fnv1a64(canonical_bytes(block)); }

std::uint64_t hash_transaction(const Transaction& tx) {
    return fnv1a64(canonical_bytes(tx));
}

std::string to_json_line(const Transaction& tx) {
    nlohmann::json j;
    j["id"] = tx.id;
    j["kind"] = static_cast<int>(tx.kind);
    j["cross_region"] = tx.cross_region;
    j["is_result"] = tx.is_result;
    j["issuer"] = {{"region", tx.issuer.region},
                   {"kind", static_cast<int>(tx.issuer.kind)},
                   {"ordinal", tx.issuer.ordinal}};
    j["timestamp"] = tx.timestamp;
    j["size_bytes"] = tx.size_bytes;
    if (const auto* s = std::get_if<StatusPayload>(&tx.payload)) {
        j["band"] = s->band;
        j["from"] = static_cast<int>(s->from);
        j["to"] = static_cast<int>(s->to);
        j["price_micro"] = s->price_micro;
    } else if (const auto* r = std::get_if<ResultPayload>(&tx.payload)) {
        j["summary"] = r->summary;
    }
    return j.dump();
}

ValidationResult validate_transaction(const Transaction& tx, const WorldState& state) {
    ValidationResult result;
    if (tx.size_bytes != tx_size_for(tx.kind)) {
        result.violations.push_back("size-mismatch");
    }
    if (tx.is_result) return result;  // results are validated by re-execution

    if (tx.kind == TaskKind::StatusTrans) {
        const auto* p = std::get_if<StatusPayload>(&tx.payload);
        if (p == nullptr) {
            result.violations.push_back("payload-kind-mismatch");
            return result;
        }
        if (p->to == UserStatus::Seller) {
            const auto band = state.bands.find(p->band);
            const bool owned = band != state.bands.end() && band->second.owner == p->user;
            const bool idle = band == state.bands.end() || !band->second.lessee.has_value();
            if (!owned) result.violations.push_back("band-not-owned");
            if (!idle) result.violations.push_back("band-not-idle");
            if (p->from == UserStatus::Buyer) {
                result.violations.push_back("buyer-to-seller-without-common");
            }
        } else if (p->to == UserStatus::Buyer) {
            if (state.balance_of(p->user) < p->price_micro) {
                result.violations.push_back("insufficient-balance");
            }
            if (p->from == UserStatus::Seller) {
                result.violations.push_back("seller-to-buyer-without-common");
            }
        }
    }
    return result;
}

}  // namespace pscdss::domain
