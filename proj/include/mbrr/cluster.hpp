#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbrr/layout.hpp"
#include "mbrr/repair.hpp"

namespace mbrr {

enum class NodeStatus { healthy, failed };

/// Storage cost and repair bandwidth of a parameter set. The overhead is
/// kept as an exact fraction n*alpha / B.
struct OverheadReport {
  std::int64_t stored_symbols = 0;  // n * alpha
  std::int64_t data_symbols = 0;    // B
  double overhead = 0.0;
  int alpha = 0;
  int repair_bandwidth = 0;  // gamma = helper_racks * beta
  double bandwidth_to_storage = 0.0;
};

OverheadReport overhead_report(const CodeParams& p);

struct ReadOptions {
  /// Nodes to read from; defaults to the k lowest healthy nodes.
  std::optional<std::vector<NodeId>> survivors;
  /// For systematic clusters, read the data positions directly when every
  /// systematic node is healthy.
  bool allow_systematic_fast_path = true;
};

/// In-memory rack cluster. Logical time, single-threaded; every operation is
/// deterministic so a script of operations always yields the same state.
class Cluster {
 public:
  explicit Cluster(CodeParams params, bool systematic = false);

  const CodeParams& params() const noexcept { return params_; }
  bool systematic() const noexcept { return systematic_; }
  std::size_t stripe_count() const noexcept { return stripes_; }
  NodeStatus status(NodeId id) const;
  std::size_t healthy_count() const;

  /// Replaces the stored content with these stripes.
  void store_stripes(std::span<const CodeMatrix> stripes);
  /// Column of `id` for one stripe; node_unavailable if the node failed.
  std::vector<Element> read_node(NodeId id, std::size_t stripe) const;

  void fail_node(NodeId id);
  /// Regenerates a failed node stripe by stripe. Requires the node to be the
  /// only failure in its rack and every helper rack fully healthy.
  BandwidthLedger repair_failed(NodeId id, std::optional<std::vector<int>> helpers = std::nullopt);

  /// Data symbols of every stripe.
  std::vector<std::vector<Element>> read_data(const ReadOptions& options = {}) const;

 private:
  std::size_t slot(NodeId id) const { return params_.position(id); }
  std::vector<Element> decode_stripe(std::size_t stripe, std::span<const NodeId> survivors) const;

  CodeParams params_;
  bool systematic_;
  std::size_t stripes_ = 0;
  std::vector<NodeStatus> status_;
  // per node: stripes_ * alpha symbols, stripe-major
  std::vector<std::vector<Element>> shards_;
};

}  // namespace mbrr
