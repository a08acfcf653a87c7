#include "mbrr/repair.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "mbrr/error.hpp"

namespace mbrr {

BandwidthLedger& BandwidthLedger::operator+=(const BandwidthLedger& other) {
  cross_rack_symbols += other.cross_rack_symbols;
  intra_rack_symbols += other.intra_rack_symbols;
  for (const auto& [rack, count] : other.per_helper) per_helper[rack] += count;
  return *this;
}

std::vector<Poly> local_polynomial_coeffs(const MessageMatrix& m, int rack) {
  const CodeParams& p = m.params();
  p.check_rack(rack);
  const Field& f = p.field();
  const int u = p.u();
  const int kr = p.k_racks();
  const int u0 = p.k_remainder();
  const int d = p.helper_racks();

  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Poly h{std::vector<Element>(static_cast<std::size_t>(u), Field::zero())};
    for (int j = 0; j < u; ++j) {
      int t_last = 0;
      if (j < u0) {
        t_last = kr;
      } else if (j < u - 1) {
        t_last = kr - 1;
      } else {
        t_last = d - 1;
      }
      Element acc = Field::zero();
      for (int t = 0; t <= t_last; ++t) {
        const Element twist = f.exp(static_cast<std::int64_t>(rack) * t * u);
        acc = f.add(acc, f.mul(m.coefficient(i, t * u + j), twist));
      }
      h.coeffs[static_cast<std::size_t>(j)] = acc;
    }
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

void require_rack_columns(const CodeParams& p, int rack, std::span<const ObservedColumn> cols,
                          std::size_t expected, const char* what) {
  if (cols.size() != expected) {
    fail(ErrorCode::repair_model, std::string(what) + ": expected " + std::to_string(expected) +
                                      " columns of rack " + std::to_string(rack) + ", got " +
                                      std::to_string(cols.size()));
  }
  for (const auto& col : cols) {
    if (col.id.rack != rack) {
      fail(ErrorCode::repair_model, std::string(what) + ": node " + to_string(col.id) +
                                        " is not in rack " + std::to_string(rack));
    }
  }
  (void)p;
}

}  // namespace

LeadingVector rack_leading_vector(const CodeParams& p, int rack, std::span<const ObservedColumn> rack_cols) {
  p.check_rack(rack);
  require_rack_columns(p, rack, rack_cols, static_cast<std::size_t>(p.u()), "rack_leading_vector");
  const auto cols = sorted_columns(p, rack_cols);
  const Field& f = p.field();

  std::vector<Element> points;
  for (const auto& col : cols) points.push_back(p.evaluation_point(col.id));

  LeadingVector hv{rack, {}};
  std::vector<Element> values(cols.size());
  for (int i = 0; i < p.helper_racks(); ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) values[c] = cols[c].symbols[static_cast<std::size_t>(i)];
    hv.h.push_back(interpolate(f, points, values).coeffs.back());
  }
  return hv;
}

HelperSymbol helper_symbol(const CodeParams& p, int target_rack, const LeadingVector& hv) {
  p.check_rack(target_rack);
  p.check_rack(hv.rack);
  if (hv.rack == target_rack) {
    fail(ErrorCode::repair_model, "helper rack " + std::to_string(hv.rack) + " is the target rack");
  }
  if (hv.h.size() != static_cast<std::size_t>(p.helper_racks())) {
    fail(ErrorCode::dimension_mismatch, "leading vector must hold helper_racks entries");
  }
  const Field& f = p.field();
  const Element x = p.rack_point(target_rack);
  Element acc = Field::zero();
  for (std::size_t t = hv.h.size(); t-- > 0;) acc = f.add(f.mul(acc, x), hv.h[t]);
  return HelperSymbol{hv.rack, target_rack, acc};
}

LeadingVector recover_leading_vector(const CodeParams& p, int target_rack,
                                     std::span<const HelperSymbol> symbols) {
  p.check_rack(target_rack);
  if (symbols.size() != static_cast<std::size_t>(p.helper_racks())) {
    fail(ErrorCode::repair_model, "need exactly " + std::to_string(p.helper_racks()) +
                                      " helper symbols, got " + std::to_string(symbols.size()));
  }
  std::set<int> seen;
  std::vector<Element> points;
  std::vector<Element> values;
  for (const auto& s : symbols) {
    p.check_rack(s.helper_rack);
    if (s.target_rack != target_rack) {
      fail(ErrorCode::repair_model, "helper symbol was computed for rack " +
                                        std::to_string(s.target_rack));
    }
    if (s.helper_rack == target_rack) {
      fail(ErrorCode::repair_model, "helper rack equals target rack " + std::to_string(target_rack));
    }
    if (!seen.insert(s.helper_rack).second) {
      fail(ErrorCode::duplicate_point, "helper rack " + std::to_string(s.helper_rack) + " used twice");
    }
    points.push_back(p.rack_point(s.helper_rack));
    values.push_back(s.value);
  }
  return LeadingVector{target_rack, vandermonde_solve(p.field(), points, values)};
}

std::vector<Element> repair_local(const CodeParams& p, NodeId failed,
                                  std::span<const ObservedColumn> surviving, const LeadingVector& hv) {
  p.check_node(failed);
  if (hv.rack != failed.rack) {
    fail(ErrorCode::repair_model, "leading vector belongs to rack " + std::to_string(hv.rack) +
                                      ", not " + std::to_string(failed.rack));
  }
  if (hv.h.size() != static_cast<std::size_t>(p.helper_racks())) {
    fail(ErrorCode::dimension_mismatch, "leading vector must hold helper_racks entries");
  }
  require_rack_columns(p, failed.rack, surviving, static_cast<std::size_t>(p.u() - 1), "repair_local");
  const auto cols = sorted_columns(p, surviving);
  for (const auto& col : cols) {
    if (col.id == failed) fail(ErrorCode::repair_model, "failed node listed among survivors");
  }

  const Field& f = p.field();
  const int top = p.u() - 1;
  std::vector<Element> points;
  std::vector<Element> tops;
  for (const auto& col : cols) {
    points.push_back(p.evaluation_point(col.id));
    tops.push_back(f.pow(points.back(), top));
  }
  const Element target = p.evaluation_point(failed);
  const Element target_top = f.pow(target, top);

  std::vector<Element> out;
  std::vector<Element> values(cols.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(p.helper_racks()); ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      values[c] = f.sub(cols[c].symbols[i], f.mul(hv.h[i], tops[c]));
    }
    const Poly residual = interpolate(f, points, values);
    out.push_back(f.add(poly_eval(f, residual, target), f.mul(hv.h[i], target_top)));
  }
  return out;
}

std::vector<int> default_helpers(const CodeParams& p, int failed_rack) {
  std::vector<int> helpers;
  for (int e = 0; e < p.rack_count() && static_cast<int>(helpers.size()) < p.helper_racks(); ++e) {
    if (e != failed_rack) helpers.push_back(e);
  }
  return helpers;
}

RepairResult repair_node(const CodeMatrix& c, NodeId failed, std::optional<std::vector<int>> helpers) {
  const CodeParams& p = c.params();
  p.check_node(failed);
  const std::vector<int> chosen = helpers ? *helpers : default_helpers(p, failed.rack);
  if (chosen.size() != static_cast<std::size_t>(p.helper_racks())) {
    fail(ErrorCode::repair_model, "repair needs exactly " + std::to_string(p.helper_racks()) +
                                      " helper racks, got " + std::to_string(chosen.size()));
  }
  for (const int e : chosen) {
    p.check_rack(e);
    if (e == failed.rack) fail(ErrorCode::repair_model, "helper set contains the host rack");
  }

  BandwidthLedger ledger;
  std::vector<HelperSymbol> symbols;
  for (const int e : chosen) {
    std::vector<NodeId> ids;
    for (int g = 0; g < p.u(); ++g) ids.push_back(NodeId{e, g});
    const auto rack_cols = observe(c, ids);
    symbols.push_back(helper_symbol(p, failed.rack, rack_leading_vector(p, e, rack_cols)));
    ledger.cross_rack_symbols += 1;
    ledger.per_helper[e] += 1;
  }
  const LeadingVector hv = recover_leading_vector(p, failed.rack, symbols);

  std::vector<NodeId> survivors;
  for (int g = 0; g < p.u(); ++g) {
    if (g != failed.index) survivors.push_back(NodeId{failed.rack, g});
  }
  const auto local = observe(c, survivors);
  ledger.intra_rack_symbols = local.size() * static_cast<std::size_t>(p.alpha());

  if (ledger.cross_rack_symbols != static_cast<std::size_t>(p.helper_racks() * p.beta())) {
    fail(ErrorCode::integrity, "repair moved " + std::to_string(ledger.cross_rack_symbols) +
                                   " cross-rack symbols, expected " +
                                   std::to_string(p.helper_racks()));
  }
  return RepairResult{repair_local(p, failed, local, hv), std::move(ledger)};
}

}  // namespace mbrr
