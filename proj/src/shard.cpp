#include "mbrr/shard.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "mbrr/error.hpp"

namespace mbrr {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'M', 'B', 'R', 'R'};

template <typename T>
void put(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = sizeof(T); i-- > 0;) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename T>
T take(std::span<const std::uint8_t> bytes, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value = static_cast<T>((value << 8) | bytes[offset + i]);
  return value;
}

}  // namespace

std::size_t symbol_bytes(int bits) { return static_cast<std::size_t>((bits + 7) / 8); }

std::vector<std::uint8_t> serialize_shard(const ShardFile& shard) {
  const auto& h = shard.header;
  if (h.payload_length != shard.payload.size()) {
    fail(ErrorCode::format, "shard payload length does not match its header");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kShardHeaderSize + shard.payload.size());
  for (const std::uint8_t b : kMagic) out.push_back(b);
  put<std::uint16_t>(out, h.version);
  put<std::uint8_t>(out, h.field_degree);
  put<std::uint8_t>(out, h.systematic ? 1 : 0);
  put<std::uint32_t>(out, h.primitive_polynomial);
  put<std::uint32_t>(out, h.n);
  put<std::uint32_t>(out, h.k);
  put<std::uint32_t>(out, h.u);
  put<std::uint32_t>(out, h.helper_racks);
  put<std::uint32_t>(out, h.rack);
  put<std::uint32_t>(out, h.node);
  put<std::uint64_t>(out, h.stripe_count);
  put<std::uint64_t>(out, h.payload_length);
  put<std::uint64_t>(out, h.file_length);
  const std::size_t header_end = out.size();
  out.resize(header_end + shard.payload.size());
  std::copy(shard.payload.begin(), shard.payload.end(), out.begin() + static_cast<std::ptrdiff_t>(header_end));
  return out;
}

ShardFile parse_shard(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kShardHeaderSize) fail(ErrorCode::format, "shard shorter than its header");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) fail(ErrorCode::format, "bad shard magic");
  ShardFile shard;
  auto& h = shard.header;
  h.version = take<std::uint16_t>(bytes, 4);
  if (h.version != kShardFormatVersion) {
    fail(ErrorCode::format, "unsupported shard format version " + std::to_string(h.version));
  }
  h.field_degree = take<std::uint8_t>(bytes, 6);
  const auto flags = take<std::uint8_t>(bytes, 7);
  if ((flags & ~1u) != 0) fail(ErrorCode::format, "unknown shard flags");
  h.systematic = (flags & 1u) != 0;
  h.primitive_polynomial = take<std::uint32_t>(bytes, 8);
  h.n = take<std::uint32_t>(bytes, 12);
  h.k = take<std::uint32_t>(bytes, 16);
  h.u = take<std::uint32_t>(bytes, 20);
  h.helper_racks = take<std::uint32_t>(bytes, 24);
  h.rack = take<std::uint32_t>(bytes, 28);
  h.node = take<std::uint32_t>(bytes, 32);
  h.stripe_count = take<std::uint64_t>(bytes, 36);
  h.payload_length = take<std::uint64_t>(bytes, 44);
  h.file_length = take<std::uint64_t>(bytes, 52);
  if (bytes.size() - kShardHeaderSize != h.payload_length) {
    fail(ErrorCode::format, "shard payload is " + std::to_string(bytes.size() - kShardHeaderSize) +
                                " bytes, header says " + std::to_string(h.payload_length));
  }
  shard.payload.assign(bytes.begin() + kShardHeaderSize, bytes.end());
  return shard;
}

void write_shard_file(const std::filesystem::path& path, const ShardFile& shard) {
  const auto bytes = serialize_shard(shard);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::io, "cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::io, "cannot rename " + tmp.string() + ": " + ec.message());
}

ShardFile read_shard_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_shard(bytes);
}

std::string shard_file_name(NodeId id) {
  return "shard_" + std::to_string(id.rack) + "_" + std::to_string(id.index) + ".mbrr";
}

CodeParams params_from_header(const ShardHeader& h) {
  const auto n = static_cast<int>(h.n);
  const auto k = static_cast<int>(h.k);
  const auto u = static_cast<int>(h.u);
  const auto d = static_cast<int>(h.helper_racks);
  if (h.field_degree == 0) {
    if (!Field::is_prime(h.primitive_polynomial) || h.primitive_polynomial > Field::kMaxPrime) {
      fail(ErrorCode::format, "shard names prime field with bad modulus " + std::to_string(h.primitive_polynomial));
    }
    return CodeParams::create(n, k, u, d, Field::prime(h.primitive_polynomial));
  }
  const CodeParams p = CodeParams::create(n, k, u, d, static_cast<int>(h.field_degree));
  if (p.field().polynomial() != h.primitive_polynomial) {
    fail(ErrorCode::format, "shard was written with polynomial " + std::to_string(h.primitive_polynomial) +
                                ", this build uses " + std::to_string(p.field().polynomial()));
  }
  return p;
}

}  // namespace mbrr
