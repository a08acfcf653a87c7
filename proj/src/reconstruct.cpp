#include "mbrr/reconstruct.hpp"

#include <algorithm>
#include <string>

#include "mbrr/error.hpp"
#include "mbrr/linalg.hpp"

namespace mbrr {

std::vector<ObservedColumn> observe(const CodeMatrix& c, std::span<const NodeId> ids) {
  std::vector<ObservedColumn> out;
  out.reserve(ids.size());
  for (const NodeId id : ids) out.push_back(ObservedColumn{id, c.column(id)});
  return out;
}

std::vector<ObservedColumn> sorted_columns(const CodeParams& p, std::span<const ObservedColumn> cols) {
  std::vector<ObservedColumn> sorted(cols.begin(), cols.end());
  for (const auto& col : sorted) {
    p.check_node(col.id);
    if (col.symbols.size() != static_cast<std::size_t>(p.alpha())) {
      fail(ErrorCode::dimension_mismatch, "column of node " + to_string(col.id) + " holds " +
                                              std::to_string(col.symbols.size()) +
                                              " symbols, expected alpha=" +
                                              std::to_string(p.alpha()));
    }
    for (const Element s : col.symbols) {
      if (!p.field().contains(s)) fail(ErrorCode::field_mismatch, "symbol outside field");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const ObservedColumn& a, const ObservedColumn& b) { return a.id < b.id; });
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end(),
                                      [](const auto& a, const auto& b) { return a.id == b.id; });
  if (dup != sorted.end()) fail(ErrorCode::duplicate_point, "node " + to_string(dup->id) + " given twice");
  return sorted;
}

MessageMatrix reconstruct(const CodeParams& p, std::span<const ObservedColumn> input) {
  if (input.size() != static_cast<std::size_t>(p.k())) {
    fail(ErrorCode::insufficient_survivors, "reconstruct needs exactly k=" + std::to_string(p.k()) +
                                                " columns, got " + std::to_string(input.size()));
  }
  const auto cols = sorted_columns(p, input);
  const Field& f = p.field();
  const int k = p.k();
  const int u = p.u();
  const int d = p.helper_racks();
  const int kr = p.k_racks();

  std::vector<Element> points;
  for (const auto& col : cols) points.push_back(p.evaluation_point(col.id));

  Matrix m(static_cast<std::size_t>(d), p.column_count());
  auto set = [&](int row, int degree, Element v) {
    m(static_cast<std::size_t>(row), static_cast<std::size_t>(p.column_of_degree(degree))) = v;
  };
  auto get = [&](int row, int degree) {
    return m(static_cast<std::size_t>(row), static_cast<std::size_t>(p.column_of_degree(degree)));
  };

  std::vector<Element> values(cols.size());
  for (int i = kr; i < d; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) values[c] = cols[c].symbols[static_cast<std::size_t>(i)];
    const Poly fi = interpolate(f, points, values);
    for (int j = 0; j < k; ++j) set(i, j, fi.coeffs[static_cast<std::size_t>(j)]);
  }

  // High-degree terms of the top rows come from the bottom rows by symmetry.
  for (int i = 0; i < kr; ++i) {
    for (int t = kr; t < d; ++t) set(i, t * u + u - 1, get(t, i * u + u - 1));
  }

  for (int i = 0; i < kr; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Element residual = cols[c].symbols[static_cast<std::size_t>(i)];
      for (int t = kr; t < d; ++t) {
        const int degree = t * u + u - 1;
        residual = f.sub(residual, f.mul(get(i, degree), f.pow(points[c], degree)));
      }
      values[c] = residual;
    }
    const Poly fi = interpolate(f, points, values);
    for (int j = 0; j < k; ++j) set(i, j, fi.coeffs[static_cast<std::size_t>(j)]);
  }

  // Only the S block can disagree with itself; anything else is structural.
  for (int i = 0; i < kr; ++i) {
    for (int j = i + 1; j < kr; ++j) {
      if (get(i, j * u + u - 1) != get(j, i * u + u - 1)) {
        fail(ErrorCode::integrity, "reconstruct: columns are not a codeword (block entry (" +
                                       std::to_string(i) + "," + std::to_string(j) +
                                       ") is not symmetric)");
      }
    }
  }
  return MessageMatrix::from_matrix(p, std::move(m));
}

MessageMatrix oracle_reconstruct(const CodeParams& p, std::span<const ObservedColumn> input) {
  if (input.size() < static_cast<std::size_t>(p.k())) {
    fail(ErrorCode::insufficient_survivors, "oracle needs at least k=" + std::to_string(p.k()) +
                                                " columns, got " + std::to_string(input.size()));
  }
  const auto cols = sorted_columns(p, input);
  const Field& f = p.field();
  const auto b = static_cast<std::size_t>(p.stripe_symbols());
  const auto d = static_cast<std::size_t>(p.helper_racks());
  const std::size_t width = p.column_count();
  const auto slots = p.fill_slots();
  const auto& lambda = p.encoding_matrix();

  // Symbol (node, row i) = sum over cells (i, c) of M[i][c] * Lambda[c][node].
  Matrix system(cols.size() * d, b);
  std::vector<Element> rhs(cols.size() * d);
  for (std::size_t n = 0; n < cols.size(); ++n) {
    const std::size_t node = p.position(cols[n].id);
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t eq = n * d + i;
      rhs[eq] = cols[n].symbols[i];
      for (std::size_t c = 0; c < width; ++c) {
        const int slot = slots[i * width + c];
        if (slot < 0) continue;
        auto& coef = system(eq, static_cast<std::size_t>(slot));
        coef = f.add(coef, lambda(c, node));
      }
    }
  }

  const auto basis = independent_rows(f, system);
  if (basis.size() != b) {
    fail(ErrorCode::singular_matrix, "oracle: observed system has rank " +
                                         std::to_string(basis.size()) + " < B=" + std::to_string(b));
  }
  Matrix square(b, b);
  std::vector<Element> square_rhs(b);
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t c = 0; c < b; ++c) square(r, c) = system(basis[r], c);
    square_rhs[r] = rhs[basis[r]];
  }
  const auto data = solve_linear(f, square, square_rhs);

  const auto check = matvec(f, system, data);
  if (check != rhs) fail(ErrorCode::integrity, "oracle: observed columns are inconsistent");
  return fill_message_matrix(p, data);
}

}  // namespace mbrr
