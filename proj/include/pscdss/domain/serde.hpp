#pragma once

// Canonical little-endian serialization. The block digest is defined over
// these bytes, so field order here is part of the wire contract:
//   tx:    id, kind, cross_region, is_result, issuer(region,kind,ordinal),
//          timestamp, size_bytes, payload(tag + fields in declaration order)
//   block: height, parent_hash, region, header_size_bytes, tx count, txs
// Strings are length-prefixed (u32); counts are u32; floats are IEEE-754
// bit patterns.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "pscdss/domain/types.hpp"

namespace pscdss::domain {

class ByteWriter {
public:
    void u8(std::uint8_t v) { bytes_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes_.insert(bytes_.end(), s.begin(), s.end());
    }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

void serialize(ByteWriter& w, const ParticipantId& id);
void serialize(ByteWriter& w, const Transaction& tx);
void serialize(ByteWriter& w, const Block& block);

std::vector<std::uint8_t> canonical_bytes(const Transaction& tx);
std::vector<std::uint8_t> canonical_bytes(const Block& block);

// FNV-1a over the canonical bytes. Digest strength targets accidental
// divergence, not adversarial forgery (crash-silence fault model).
std::uint64_t fnv1a64(const std::vector<std::uint8_t>& bytes);
std::uint64_t hash_block(const Block& block);
std::uint64_t hash_transaction(const Transaction& tx);

// One transaction per line, for debugging dumps.
std::string to_json_line(const Transaction& tx);

}  // namespace pscdss::domain
