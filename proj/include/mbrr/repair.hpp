#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mbrr/layout.hpp"
#include "mbrr/linalg.hpp"
#include "mbrr/reconstruct.hpp"

namespace mbrr {

/// Leading coefficients (degree u-1) of the local polynomials of rack `rack`.
struct LeadingVector {
  int rack = 0;
  std::vector<Element> h;

  friend bool operator==(const LeadingVector&, const LeadingVector&) = default;
};

/// The single symbol one helper rack sends across racks.
struct HelperSymbol {
  int helper_rack = 0;
  int target_rack = 0;
  Element value;

  friend bool operator==(const HelperSymbol&, const HelperSymbol&) = default;
};

/// Symbol traffic of a repair. Only cross-rack symbols count as repair
/// bandwidth; intra-rack reads are informational.
struct BandwidthLedger {
  std::size_t cross_rack_symbols = 0;
  std::size_t intra_rack_symbols = 0;
  std::map<int, std::size_t> per_helper;

  BandwidthLedger& operator+=(const BandwidthLedger& other);
  friend bool operator==(const BandwidthLedger&, const BandwidthLedger&) = default;
};

struct RepairResult {
  std::vector<Element> column;
  BandwidthLedger ledger;
};

/// h_i^(e), i in [0, alpha), each of degree <= u-1. Coefficient j collects
/// the terms m_{i, tu+j} * xi^(etu) of f_i, with t ranging over
///   [0, k_racks]           when j < k_remainder,
///   [0, k_racks - 1]       when k_remainder <= j < u-1,
///   [0, helper_racks - 1]  when j = u-1.
std::vector<Poly> local_polynomial_coeffs(const MessageMatrix& m, int rack);

/// Interpolates each row's local polynomial from the u columns of the rack
/// and keeps the degree u-1 coefficient.
LeadingVector rack_leading_vector(const CodeParams& p, int rack, std::span<const ObservedColumn> rack_cols);

/// sum_t (xi^(target*u))^t * hv.h[t]
HelperSymbol helper_symbol(const CodeParams& p, int target_rack, const LeadingVector& hv);

/// Solves for the target's leading vector from helper_racks helper symbols.
/// M1 is symmetric, so each symbol equals phi_helper^t * h_target and the
/// system is Vandermonde in the helper rack points.
LeadingVector recover_leading_vector(const CodeParams& p, int target_rack,
                                     std::span<const HelperSymbol> symbols);

/// Rebuilds the column of (rack, index) from the u-1 other columns of its rack
/// and the rack's leading vector.
std::vector<Element> repair_local(const CodeParams& p, NodeId failed,
                                  std::span<const ObservedColumn> surviving, const LeadingVector& hv);

/// Lowest-indexed helper_racks racks other than `failed_rack`.
std::vector<int> default_helpers(const CodeParams& p, int failed_rack);

/// Full single-node repair on a code matrix whose column `failed` is lost.
/// The ledger carries exactly helper_racks cross-rack symbols.
RepairResult repair_node(const CodeMatrix& c, NodeId failed,
                         std::optional<std::vector<int>> helpers = std::nullopt);

}  // namespace mbrr
