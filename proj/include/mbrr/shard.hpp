#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mbrr/layout.hpp"

namespace mbrr {

/// Fixed 60-byte header, all integers big-endian:
///
///   offset size field
///        0    4 magic "MBRR"
///        4    2 format version (1)
///        6    1 m
///        7    1 flags (bit 0: systematic)
///        8    4 primitive polynomial
///       12    4 n
///       16    4 k
///       20    4 u
///       24    4 helper racks
///       28    4 rack e
///       32    4 node g
///       36    8 stripe count
///       44    8 payload length in bytes
///       52    8 original file length in bytes
///
/// A field degree of 0 marks the prime field GF(p), with p in the polynomial
/// slot. The payload follows: stripe_count * alpha symbols of
/// symbol_bytes(Field::symbol_bits()) bytes each, big-endian, stripe-major.
struct ShardHeader {
  std::uint16_t version = 1;
  std::uint8_t field_degree = 0;
  bool systematic = false;
  std::uint32_t primitive_polynomial = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t u = 0;
  std::uint32_t helper_racks = 0;
  std::uint32_t rack = 0;
  std::uint32_t node = 0;
  std::uint64_t stripe_count = 0;
  std::uint64_t payload_length = 0;
  std::uint64_t file_length = 0;

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

struct ShardFile {
  ShardHeader header;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const ShardFile&, const ShardFile&) = default;
};

inline constexpr std::size_t kShardHeaderSize = 60;
inline constexpr std::uint16_t kShardFormatVersion = 1;

/// Bytes per stored symbol for elements of `bits` bits.
std::size_t symbol_bytes(int bits);

std::vector<std::uint8_t> serialize_shard(const ShardFile& shard);
/// Throws format on bad magic, unknown version, or length mismatch.
ShardFile parse_shard(std::span<const std::uint8_t> bytes);

/// Writes to a temporary sibling and renames it into place.
void write_shard_file(const std::filesystem::path& path, const ShardFile& shard);
ShardFile read_shard_file(const std::filesystem::path& path);

/// "shard_<e>_<g>.mbrr"
std::string shard_file_name(NodeId id);

/// Parameters the shard was written with; checks the stored polynomial
/// against the field table.
CodeParams params_from_header(const ShardHeader& header);

}  // namespace mbrr
