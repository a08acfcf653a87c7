#pragma once

#include <span>
#include <vector>

#include "mbrr/layout.hpp"

namespace mbrr {

/// The alpha symbols read back from one node.
struct ObservedColumn {
  NodeId id;
  std::vector<Element> symbols;

  friend bool operator==(const ObservedColumn&, const ObservedColumn&) = default;
};

/// Columns of `c` for the given nodes, in the given order.
std::vector<ObservedColumn> observe(const CodeMatrix& c, std::span<const NodeId> ids);

/// Checks ids are in range and pairwise distinct and that every column holds
/// alpha symbols. Returns the columns sorted by node.
std::vector<ObservedColumn> sorted_columns(const CodeParams& p, std::span<const ObservedColumn> cols);

/// Recovers M from exactly k columns:
///  1. rows k_racks..alpha-1 have degree < k and are interpolated directly;
///  2. their coefficients at degrees iu+u-1 give, by symmetry, the terms of
///     degree >= k in rows 0..k_racks-1;
///  3. those terms are subtracted and the rest of each top row interpolated.
/// Throws integrity when the recovered block is not symmetric, which can only
/// happen for columns that are not a codeword.
MessageMatrix reconstruct(const CodeParams& p, std::span<const ObservedColumn> cols);

/// Generic decoder used as an independent check: one linear equation per
/// observed symbol in the B free entries of M, solved by Gaussian
/// elimination. Accepts k or more columns.
MessageMatrix oracle_reconstruct(const CodeParams& p, std::span<const ObservedColumn> cols);

}  // namespace mbrr
