#include "mbrr/file_codec.hpp"

#include <set>

#include "mbrr/cluster.hpp"
#include "mbrr/encode.hpp"
#include "mbrr/error.hpp"
#include "mbrr/systematic.hpp"

namespace mbrr {

std::vector<Element> bytes_to_symbols(std::span<const std::uint8_t> bytes, int bits_per_symbol) {
  if (bits_per_symbol < 1 || bits_per_symbol > 16) {
    fail(ErrorCode::out_of_range, "symbol width " + std::to_string(bits_per_symbol) + " outside [1, 16]");
  }
  const auto m = static_cast<std::size_t>(bits_per_symbol);
  const std::size_t bits = bytes.size() * 8;
  std::vector<Element> out((bits + m - 1) / m);
  for (std::size_t bit = 0; bit < bits; ++bit) {
    const unsigned b = (bytes[bit / 8] >> (7 - bit % 8)) & 1u;
    auto& sym = out[bit / m];
    sym.value = static_cast<std::uint16_t>(sym.value | (b << (m - 1 - bit % m)));
  }
  return out;
}

std::vector<std::uint8_t> symbols_to_bytes(std::span<const Element> symbols, int bits_per_symbol,
                                           std::size_t length) {
  if (bits_per_symbol < 1 || bits_per_symbol > 16) {
    fail(ErrorCode::out_of_range, "symbol width " + std::to_string(bits_per_symbol) + " outside [1, 16]");
  }
  const auto m = static_cast<std::size_t>(bits_per_symbol);
  if (symbols.size() * m < length * 8) {
    fail(ErrorCode::format, "not enough symbols for " + std::to_string(length) + " bytes");
  }
  std::vector<std::uint8_t> out(length, 0);
  for (std::size_t bit = 0; bit < length * 8; ++bit) {
    const unsigned b = (symbols[bit / m].value >> (m - 1 - bit % m)) & 1u;
    out[bit / 8] = static_cast<std::uint8_t>(out[bit / 8] | (b << (7 - bit % 8)));
  }
  return out;
}

namespace {

ShardHeader base_header(const CodeParams& p, bool systematic, std::uint64_t stripes, std::uint64_t length) {
  ShardHeader h;
  h.version = kShardFormatVersion;
  h.field_degree = static_cast<std::uint8_t>(p.field().is_binary() ? p.field().degree() : 0);
  h.systematic = systematic;
  h.primitive_polynomial = p.field().polynomial();
  h.n = static_cast<std::uint32_t>(p.n());
  h.k = static_cast<std::uint32_t>(p.k());
  h.u = static_cast<std::uint32_t>(p.u());
  h.helper_racks = static_cast<std::uint32_t>(p.helper_racks());
  h.stripe_count = stripes;
  h.payload_length = stripes * static_cast<std::uint64_t>(p.alpha()) * symbol_bytes(p.field().symbol_bits());
  h.file_length = length;
  return h;
}

void put_symbol(std::vector<std::uint8_t>& out, Element s, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>(s.value >> (8 * i)));
}

/// Shards of one encoding, checked for consistent headers, loaded into a
/// cluster where absent nodes are marked failed.
struct LoadedShards {
  CodeParams params;
  ShardHeader header;
  Cluster cluster;
};

LoadedShards load(std::span<const ShardFile> shards) {
  if (shards.empty()) fail(ErrorCode::insufficient_survivors, "no shards given");
  ShardHeader common = shards.front().header;
  common.rack = 0;
  common.node = 0;
  const CodeParams p = params_from_header(common);
  const std::size_t width = symbol_bytes(p.field().symbol_bits());
  const auto alpha = static_cast<std::size_t>(p.alpha());
  if (common.payload_length != common.stripe_count * alpha * width) {
    fail(ErrorCode::format, "payload length inconsistent with stripe count");
  }

  std::set<NodeId> present;
  std::vector<const ShardFile*> by_position(static_cast<std::size_t>(p.n()), nullptr);
  for (const auto& s : shards) {
    ShardHeader h = s.header;
    const NodeId id{static_cast<int>(h.rack), static_cast<int>(h.node)};
    h.rack = 0;
    h.node = 0;
    if (!(h == common)) fail(ErrorCode::format, "shard " + to_string(id) + " header does not match the others");
    if (s.payload.size() != common.payload_length) fail(ErrorCode::format, "shard " + to_string(id) + " payload truncated");
    p.check_node(id);
    if (!present.insert(id).second) fail(ErrorCode::duplicate_point, "shard " + to_string(id) + " given twice");
    by_position[p.position(id)] = &s;
  }

  const auto stripes = static_cast<std::size_t>(common.stripe_count);
  std::vector<CodeMatrix> matrices(stripes, CodeMatrix(p));
  std::vector<Element> column(alpha);
  for (std::size_t pos = 0; pos < by_position.size(); ++pos) {
    const ShardFile* s = by_position[pos];
    if (s == nullptr) continue;
    const NodeId id = p.node_at(pos);
    std::size_t offset = 0;
    for (std::size_t stripe = 0; stripe < stripes; ++stripe) {
      for (std::size_t i = 0; i < alpha; ++i) {
        std::uint32_t v = 0;
        for (std::size_t b = 0; b < width; ++b) v = (v << 8) | s->payload[offset++];
        column[i] = p.field().element(v);
      }
      matrices[stripe].set_column(id, column);
    }
  }
  Cluster cluster(p, common.systematic);
  cluster.store_stripes(matrices);
  for (std::size_t pos = 0; pos < by_position.size(); ++pos) {
    if (by_position[pos] == nullptr) cluster.fail_node(p.node_at(pos));
  }
  return LoadedShards{p, common, std::move(cluster)};
}

}  // namespace

std::vector<ShardFile> encode_bytes(const CodeParams& p, std::span<const std::uint8_t> bytes, bool systematic) {
  if (bytes.empty()) fail(ErrorCode::invalid_argument, "cannot encode an empty file");
  auto symbols = bytes_to_symbols(bytes, p.field().data_bits());
  const auto b = static_cast<std::size_t>(p.stripe_symbols());
  const std::size_t stripes = (symbols.size() + b - 1) / b;
  symbols.resize(stripes * b, Field::zero());

  const ShardHeader header = base_header(p, systematic, stripes, bytes.size());
  std::vector<ShardFile> shards;
  for (const NodeId id : p.nodes()) {
    ShardFile s{header, {}};
    s.header.rack = static_cast<std::uint32_t>(id.rack);
    s.header.node = static_cast<std::uint32_t>(id.index);
    s.payload.reserve(header.payload_length);
    shards.push_back(std::move(s));
  }

  const Matrix precode = systematic ? precoding_matrix(p) : Matrix();
  const std::size_t width = symbol_bytes(p.field().symbol_bits());
  for (std::size_t stripe = 0; stripe < stripes; ++stripe) {
    const std::span<const Element> data(symbols.data() + stripe * b, b);
    const MessageMatrix msg =
        systematic ? fill_message_matrix(p, matvec(p.field(), precode, data)) : fill_message_matrix(p, data);
    const CodeMatrix c = encode(msg);
    for (std::size_t node = 0; node < shards.size(); ++node) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(p.alpha()); ++i) {
        put_symbol(shards[node].payload, c.entries()(i, node), width);
      }
    }
  }
  return shards;
}

std::vector<std::uint8_t> decode_shards(std::span<const ShardFile> shards) {
  if (!shards.empty() && shards.size() < shards.front().header.k) {
    fail(ErrorCode::insufficient_survivors, "need at least k=" + std::to_string(shards.front().header.k) +
                                                " shards, got " + std::to_string(shards.size()));
  }
  const LoadedShards loaded = load(shards);
  const auto stripes = loaded.cluster.read_data();
  std::vector<Element> symbols;
  symbols.reserve(stripes.size() * static_cast<std::size_t>(loaded.params.stripe_symbols()));
  for (const auto& s : stripes) symbols.insert(symbols.end(), s.begin(), s.end());
  return symbols_to_bytes(symbols, loaded.params.field().data_bits(),
                          static_cast<std::size_t>(loaded.header.file_length));
}

ShardRepair repair_shard(std::span<const ShardFile> shards, NodeId failed, std::optional<std::vector<int>> helpers) {
  LoadedShards loaded = load(shards);
  const CodeParams& p = loaded.params;
  p.check_node(failed);
  if (loaded.cluster.status(failed) != NodeStatus::failed) {
    fail(ErrorCode::repair_model, "shard " + to_string(failed) + " is present, nothing to repair");
  }
  const BandwidthLedger ledger = loaded.cluster.repair_failed(failed, std::move(helpers));

  ShardFile out{loaded.header, {}};
  out.header.rack = static_cast<std::uint32_t>(failed.rack);
  out.header.node = static_cast<std::uint32_t>(failed.index);
  out.payload.reserve(out.header.payload_length);
  const std::size_t width = symbol_bytes(p.field().symbol_bits());
  for (std::size_t stripe = 0; stripe < loaded.cluster.stripe_count(); ++stripe) {
    for (const Element s : loaded.cluster.read_node(failed, stripe)) put_symbol(out.payload, s, width);
  }
  return ShardRepair{std::move(out), ledger};
}

}  // namespace mbrr
