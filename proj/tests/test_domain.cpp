#include <doctest.h>

#include "pscdss/domain/serde.hpp"
#include "pscdss/domain/validate.hpp"
#include "pscdss/mc/rng.hpp"

using namespace pscdss::domain;

namespace {

ParticipantId user(std::uint32_t region, std::uint32_t ordinal) {
    return {region, ParticipantKind::BaseStation, ordinal};
}

Transaction status_tx(std::uint64_t id, ParticipantId who, std::uint32_t band,
                      UserStatus to, std::int64_t price, double ts = 1.0) {
    Transaction tx;
    tx.id = id;
    tx.kind = TaskKind::StatusTrans;
    tx.issuer = who;
    tx.timestamp = ts;
    tx.size_bytes = tx_size_for(TaskKind::StatusTrans);
    StatusPayload p;
    p.user = who;
    p.band = band;
    p.from = UserStatus::Common;
    p.to = to;
    p.price_micro = price;
    p.duration_s = 60.0;
    tx.payload = p;
    return tx;
}

Block sample_block() {
    Block b;
    b.header.height = 3;
    b.header.parent_hash = 0xabcdef;
    b.header.region = 1;
    b.txs.push_back(status_tx(10, user(1, 2), 5, UserStatus::Seller, 700));
    b.txs.push_back(status_tx(11, user(1, 3), 6, UserStatus::Buyer, 900));
    b.hash = hash_block(b);
    return b;
}

}  // namespace

TEST_CASE("identical blocks hash identically") {
    const Block a = sample_block();
    const Block b = sample_block();
    CHECK(hash_block(a) == hash_block(b));
}

TEST_CASE("any single-field change alters the digest") {
    const Block a = sample_block();
    Block b = a;
    b.txs[0].id = 12;
    CHECK(hash_block(a) != hash_block(b));

    Block c = a;
    c.header.height = 4;
    CHECK(hash_block(a) != hash_block(c));

    Block d = a;
    std::get<StatusPayload>(d.txs[1].payload).price_micro += 1;
    CHECK(hash_block(a) != hash_block(d));
}

TEST_CASE("hash is stable through re-serialization") {
    const Block a = sample_block();
    const auto bytes = canonical_bytes(a);
    CHECK(hash_block(a) == fnv1a64(bytes));
    const auto again = canonical_bytes(a);
    CHECK(bytes == again);
}

TEST_CASE("json-lines dump emits one object per transaction") {
    const Block a = sample_block();
    for (const auto& tx : a.txs) {
        const auto line = to_json_line(tx);
        CHECK(line.front() == '{');
        CHECK(line.back() == '}');
        CHECK(line.find("\"id\"") != std::string::npos);
        CHECK(line.find('\n') == std::string::npos);
    }
}

TEST_CASE("seller request for an owned idle band validates") {
    WorldState state;
    state.bands[5].owner = user(1, 2);
    const auto tx = status_tx(1, user(1, 2), 5, UserStatus::Seller, 700);
    CHECK(validate_transaction(tx, state).ok());
}

TEST_CASE("buyer with zero balance and positive price is rejected") {
    WorldState state;
    const auto tx = status_tx(2, user(1, 3), 5, UserStatus::Buyer, 10);
    const auto result = validate_transaction(tx, state);
    REQUIRE(!result.ok());
    CHECK(result.violations[0] == "insufficient-balance");
}

TEST_CASE("wire size must match the task family") {
    WorldState state;
    Transaction tx;
    tx.kind = TaskKind::SpecAllo;
    tx.size_bytes = 650;  // Task-4 size on a Task-3 transaction
    tx.payload = AlloPayload{};
    const auto result = validate_transaction(tx, state);
    REQUIRE(!result.ok());
    CHECK(result.violations[0] == "size-mismatch");

    tx.size_bytes = tx_size_for(TaskKind::SpecAllo);
    CHECK(validate_transaction(tx, state).ok());
}

TEST_CASE("leased band cannot be re-listed") {
    WorldState state;
    state.bands[5].owner = user(1, 2);
    state.bands[5].lessee = user(1, 4);
    const auto tx = status_tx(3, user(1, 2), 5, UserStatus::Seller, 700);
    const auto result = validate_transaction(tx, state);
    REQUIRE(!result.ok());
    CHECK(result.violations[0] == "band-not-idle");
}

TEST_CASE("validation never mutates state") {
    WorldState state;
    state.balances_micro[user(1, 3).key()] = 50;
    const auto before = state.balances_micro;
    const auto tx = status_tx(4, user(1, 3), 5, UserStatus::Buyer, 10);
    (void)validate_transaction(tx, state);
    CHECK(state.balances_micro == before);
    CHECK(state.statuses.empty());
}
