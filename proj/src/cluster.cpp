#include "mbrr/cluster.hpp"

#include <algorithm>
#include <set>

#include "mbrr/encode.hpp"
#include "mbrr/error.hpp"
#include "mbrr/reconstruct.hpp"
#include "mbrr/systematic.hpp"

namespace mbrr {

OverheadReport overhead_report(const CodeParams& p) {
  OverheadReport r;
  r.alpha = p.alpha();
  r.stored_symbols = static_cast<std::int64_t>(p.n()) * p.alpha();
  r.data_symbols = p.stripe_symbols();
  r.overhead = static_cast<double>(r.stored_symbols) / static_cast<double>(r.data_symbols);
  r.repair_bandwidth = p.helper_racks() * p.beta();
  r.bandwidth_to_storage = static_cast<double>(r.repair_bandwidth) / static_cast<double>(r.alpha);
  return r;
}

Cluster::Cluster(CodeParams params, bool systematic)
    : params_(std::move(params)),
      systematic_(systematic),
      status_(static_cast<std::size_t>(params_.n()), NodeStatus::healthy),
      shards_(static_cast<std::size_t>(params_.n())) {}

NodeStatus Cluster::status(NodeId id) const { return status_[slot(id)]; }

std::size_t Cluster::healthy_count() const {
  return static_cast<std::size_t>(std::count(status_.begin(), status_.end(), NodeStatus::healthy));
}

void Cluster::store_stripes(std::span<const CodeMatrix> stripes) {
  for (const auto& c : stripes) {
    if (!(c.params() == params_)) {
      fail(ErrorCode::dimension_mismatch, "stripe was encoded with different parameters");
    }
  }
  const auto alpha = static_cast<std::size_t>(params_.alpha());
  for (std::size_t node = 0; node < shards_.size(); ++node) {
    status_[node] = NodeStatus::healthy;
    auto& shard = shards_[node];
    shard.clear();
    shard.reserve(stripes.size() * alpha);
    for (const auto& c : stripes) {
      for (std::size_t i = 0; i < alpha; ++i) shard.push_back(c.entries()(i, node));
    }
  }
  stripes_ = stripes.size();
}

std::vector<Element> Cluster::read_node(NodeId id, std::size_t stripe) const {
  const std::size_t s = slot(id);
  if (status_[s] != NodeStatus::healthy) {
    fail(ErrorCode::node_unavailable, "node " + to_string(id) + " has failed");
  }
  if (stripe >= stripes_) fail(ErrorCode::out_of_range, "stripe " + std::to_string(stripe) + " not stored");
  const auto alpha = static_cast<std::size_t>(params_.alpha());
  const auto begin = shards_[s].begin() + static_cast<std::ptrdiff_t>(stripe * alpha);
  return {begin, begin + static_cast<std::ptrdiff_t>(alpha)};
}

void Cluster::fail_node(NodeId id) {
  const std::size_t s = slot(id);
  if (status_[s] == NodeStatus::failed) {
    fail(ErrorCode::node_unavailable, "node " + to_string(id) + " has already failed");
  }
  status_[s] = NodeStatus::failed;
  shards_[s].clear();
  shards_[s].shrink_to_fit();
}

BandwidthLedger Cluster::repair_failed(NodeId id, std::optional<std::vector<int>> helpers) {
  const std::size_t s = slot(id);
  if (status_[s] != NodeStatus::failed) {
    fail(ErrorCode::repair_model, "node " + to_string(id) + " is not failed");
  }
  const int u = params_.u();
  for (int g = 0; g < u; ++g) {
    if (g != id.index && status(NodeId{id.rack, g}) != NodeStatus::healthy) {
      fail(ErrorCode::repair_model, "host rack " + std::to_string(id.rack) +
                                        " has more than one failed node");
    }
  }
  const std::vector<int> chosen = helpers ? *helpers : [&] {
    // lowest fully healthy racks
    std::vector<int> out;
    for (int e = 0; e < params_.rack_count() && static_cast<int>(out.size()) < params_.helper_racks(); ++e) {
      if (e == id.rack) continue;
      bool healthy = true;
      for (int g = 0; g < u; ++g) healthy = healthy && status(NodeId{e, g}) == NodeStatus::healthy;
      if (healthy) out.push_back(e);
    }
    return out;
  }();
  if (chosen.size() != static_cast<std::size_t>(params_.helper_racks())) {
    fail(ErrorCode::repair_model, "repair needs " + std::to_string(params_.helper_racks()) +
                                      " healthy helper racks, have " + std::to_string(chosen.size()));
  }
  std::set<int> distinct;
  for (const int e : chosen) {
    params_.check_rack(e);
    if (e == id.rack) fail(ErrorCode::repair_model, "helper set contains the host rack");
    if (!distinct.insert(e).second) fail(ErrorCode::repair_model, "helper rack listed twice");
    for (int g = 0; g < u; ++g) {
      if (status(NodeId{e, g}) != NodeStatus::healthy) {
        fail(ErrorCode::repair_model, "helper rack " + std::to_string(e) + " is not fully healthy");
      }
    }
  }

  // The repair only touches the host rack and the helper racks; other
  // columns of the scratch matrix stay zero.
  BandwidthLedger total;
  std::vector<Element> restored;
  restored.reserve(stripes_ * static_cast<std::size_t>(params_.alpha()));
  for (std::size_t stripe = 0; stripe < stripes_; ++stripe) {
    CodeMatrix scratch(params_);
    for (int g = 0; g < u; ++g) {
      if (g != id.index) scratch.set_column(NodeId{id.rack, g}, read_node(NodeId{id.rack, g}, stripe));
    }
    for (const int e : chosen) {
      for (int g = 0; g < u; ++g) scratch.set_column(NodeId{e, g}, read_node(NodeId{e, g}, stripe));
    }
    auto result = repair_node(scratch, id, chosen);
    std::size_t emitted = 0;
    for (const auto& [rack, count] : result.ledger.per_helper) emitted += count;
    if (result.ledger.cross_rack_symbols != static_cast<std::size_t>(params_.helper_racks()) ||
        emitted != result.ledger.cross_rack_symbols) {
      fail(ErrorCode::integrity, "repair ledger does not match helper_racks cross-rack symbols");
    }
    restored.insert(restored.end(), result.column.begin(), result.column.end());
    total += result.ledger;
  }
  shards_[s] = std::move(restored);
  status_[s] = NodeStatus::healthy;
  return total;
}

std::vector<Element> Cluster::decode_stripe(std::size_t stripe, std::span<const NodeId> survivors) const {
  std::vector<ObservedColumn> cols;
  for (const NodeId id : survivors) cols.push_back(ObservedColumn{id, read_node(id, stripe)});
  const MessageMatrix m = reconstruct(params_, cols);
  if (!systematic_) return unfill_message_matrix(m);
  return systematic_extract(params_, encode(m));
}

std::vector<std::vector<Element>> Cluster::read_data(const ReadOptions& options) const {
  const auto k = static_cast<std::size_t>(params_.k());
  std::vector<NodeId> survivors;
  if (options.survivors) {
    survivors = *options.survivors;
    if (survivors.size() != k) {
      fail(ErrorCode::insufficient_survivors, "read needs exactly k=" + std::to_string(k) + " survivors");
    }
    for (const NodeId id : survivors) {
      if (status(id) != NodeStatus::healthy) {
        fail(ErrorCode::node_unavailable, "node " + to_string(id) + " has failed");
      }
    }
  } else {
    for (const NodeId id : params_.nodes()) {
      if (survivors.size() == k) break;
      if (status(id) == NodeStatus::healthy) survivors.push_back(id);
    }
    if (survivors.size() < k) {
      fail(ErrorCode::insufficient_survivors, "only " + std::to_string(survivors.size()) +
                                                  " healthy nodes, need k=" + std::to_string(k));
    }
  }

  bool fast = systematic_ && options.allow_systematic_fast_path;
  for (std::size_t pos = 0; fast && pos < k; ++pos) {
    fast = status_[pos] == NodeStatus::healthy;
  }

  std::vector<std::vector<Element>> out;
  out.reserve(stripes_);
  for (std::size_t stripe = 0; stripe < stripes_; ++stripe) {
    if (fast) {
      CodeMatrix c(params_);
      for (std::size_t pos = 0; pos < k; ++pos) {
        c.set_column(params_.node_at(pos), read_node(params_.node_at(pos), stripe));
      }
      out.push_back(systematic_extract(params_, c));
    } else {
      out.push_back(decode_stripe(stripe, survivors));
    }
  }
  return out;
}

}  // namespace mbrr
