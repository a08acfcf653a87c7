#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mbrr/repair.hpp"
#include "mbrr/shard.hpp"

namespace mbrr {

/// Splits a byte string into `bits`-bit symbols, most significant bit first;
/// the tail is zero-padded. With 8 bits this is one byte per symbol, with 16
/// two bytes big-endian. Files are packed with Field::data_bits().
std::vector<Element> bytes_to_symbols(std::span<const std::uint8_t> bytes, int bits);
/// Inverse of bytes_to_symbols, truncated to `length` bytes.
std::vector<std::uint8_t> symbols_to_bytes(std::span<const Element> symbols, int bits, std::size_t length);

/// Encodes a file into n shards, one per node, in node order. Each stripe
/// carries B symbols; the last one is zero-padded.
std::vector<ShardFile> encode_bytes(const CodeParams& p, std::span<const std::uint8_t> bytes,
                                    bool systematic);

/// Recovers the file from any k or more shards of one encoding.
std::vector<std::uint8_t> decode_shards(std::span<const ShardFile> shards);

struct ShardRepair {
  ShardFile shard;
  BandwidthLedger ledger;
};

/// Regenerates the shard of `failed` from the other shards of its rack and
/// the shards of the helper racks.
ShardRepair repair_shard(std::span<const ShardFile> shards, NodeId failed,
                         std::optional<std::vector<int>> helpers = std::nullopt);

}  // namespace mbrr
