#include "mbrr/systematic.hpp"

#include <set>
#include <string>

#include "mbrr/encode.hpp"
#include "mbrr/error.hpp"
#include "mbrr/reconstruct.hpp"

namespace mbrr {

namespace {

bool is_redundant(const CodeParams& p, int row, NodeId node) {
  const int kr = p.k_racks();
  return node.index == p.u() - 1 && node.rack <= kr - 2 && row > node.rack && row <= kr - 1;
}

}  // namespace

SystematicLayout systematic_layout(const CodeParams& p) {
  SystematicLayout layout;
  for (std::size_t pos = 0; pos < static_cast<std::size_t>(p.k()); ++pos) {
    const NodeId node = p.node_at(pos);
    for (int i = 0; i < p.alpha(); ++i) {
      if (is_redundant(p, i, node)) {
        layout.redundant_positions.push_back(CodeCell{i, node});
      } else {
        layout.data_positions.push_back(CodeCell{i, node});
      }
    }
  }
  return layout;
}

MessageMatrix systematic_message_matrix(const CodeParams& p, std::span<const Element> data) {
  if (data.size() != static_cast<std::size_t>(p.stripe_symbols())) {
    fail(ErrorCode::dimension_mismatch, "systematic: expected B=" +
                                            std::to_string(p.stripe_symbols()) + " symbols, got " +
                                            std::to_string(data.size()));
  }
  const Field& f = p.field();
  const int u = p.u();
  const int d = p.helper_racks();
  const int kr = p.k_racks();
  const auto du = static_cast<std::size_t>(d);
  const auto kru = static_cast<std::size_t>(kr);

  // First k columns with the data in place; redundant cells still zero.
  const SystematicLayout layout = systematic_layout(p);
  Matrix partial(du, static_cast<std::size_t>(p.k()));
  for (std::size_t s = 0; s < layout.data_positions.size(); ++s) {
    const auto& cell = layout.data_positions[s];
    if (!f.contains(data[s])) fail(ErrorCode::field_mismatch, "systematic: data symbol outside field");
    partial(static_cast<std::size_t>(cell.row), p.position(cell.node)) = data[s];
  }

  auto rack_row_values = [&](int rack, int row, int count) {
    std::vector<Element> values;
    for (int g = 0; g < count; ++g) {
      values.push_back(partial(static_cast<std::size_t>(row), p.position(NodeId{rack, g})));
    }
    return values;
  };
  auto rack_row_points = [&](int rack, int count) {
    std::vector<Element> points;
    for (int g = 0; g < count; ++g) points.push_back(p.evaluation_point(NodeId{rack, g}));
    return points;
  };

  // lead[e][i]: leading coefficient of row i's local polynomial on rack e.
  std::vector<std::vector<Element>> lead(kru, std::vector<Element>(du));
  for (int e = 0; e < kr; ++e) {
    const auto points = rack_row_points(e, u);
    for (int i = 0; i < d; ++i) {
      if (i > e && i < kr) continue;
      const auto values = rack_row_values(e, i, u);
      lead[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] =
          interpolate(f, points, values).coeffs.back();
    }
  }

  std::vector<Element> rack_points;
  for (int e = 0; e < kr; ++e) rack_points.push_back(p.rack_point(e));

  // block(i, j) = M1 entry; S is kr x kr, T is kr x (d - kr).
  Matrix block(du, du);

  // Bottom rows: sum_{j < kr} T[j][i-kr] * x_e^j = lead[e][i].
  for (int i = kr; i < d; ++i) {
    std::vector<Element> rhs;
    for (int e = 0; e < kr; ++e) rhs.push_back(lead[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)]);
    const auto column = vandermonde_solve(f, rack_points, rhs);
    for (int j = 0; j < kr; ++j) {
      block(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = column[static_cast<std::size_t>(j)];
      block(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = column[static_cast<std::size_t>(j)];
    }
  }

  // Row r of S: unknowns S[r][r..kr-1], equations from racks e in [r, kr-1].
  for (int r = 0; r < kr; ++r) {
    const auto size = static_cast<std::size_t>(kr - r);
    Matrix system(size, size);
    std::vector<Element> rhs(size);
    for (int e = r; e < kr; ++e) {
      const auto eq = static_cast<std::size_t>(e - r);
      const Element x = rack_points[static_cast<std::size_t>(e)];
      Element known = Field::zero();
      for (int j = 0; j < d; ++j) {
        const Element power = f.pow(x, j);
        if (j >= r && j < kr) {
          system(eq, static_cast<std::size_t>(j - r)) = power;
        } else {
          known = f.add(known, f.mul(block(static_cast<std::size_t>(r), static_cast<std::size_t>(j)), power));
        }
      }
      rhs[eq] = f.sub(lead[static_cast<std::size_t>(e)][static_cast<std::size_t>(r)], known);
    }
    const auto row = solve_linear(f, system, rhs);
    for (int j = r; j < kr; ++j) {
      const Element v = row[static_cast<std::size_t>(j - r)];
      block(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) = v;
      block(static_cast<std::size_t>(j), static_cast<std::size_t>(r)) = v;
    }
  }

  // Redundant cells: local polynomial through u-1 known values plus the
  // leading coefficient from the completed block.
  for (const auto& cell : layout.redundant_positions) {
    const int e = cell.node.rack;
    const auto i = static_cast<std::size_t>(cell.row);
    const Element x = rack_points[static_cast<std::size_t>(e)];
    Element leading = Field::zero();
    for (int j = 0; j < d; ++j) {
      leading = f.add(leading, f.mul(block(i, static_cast<std::size_t>(j)), f.pow(x, j)));
    }
    const auto points = rack_row_points(e, u - 1);
    auto values = rack_row_values(e, cell.row, u - 1);
    for (std::size_t g = 0; g < values.size(); ++g) {
      values[g] = f.sub(values[g], f.mul(leading, f.pow(points[g], u - 1)));
    }
    const Element target = p.evaluation_point(cell.node);
    const Element value = f.add(poly_eval(f, interpolate(f, points, values), target),
                                f.mul(leading, f.pow(target, u - 1)));
    partial(i, p.position(cell.node)) = value;
  }

  std::vector<ObservedColumn> cols;
  for (std::size_t pos = 0; pos < static_cast<std::size_t>(p.k()); ++pos) {
    cols.push_back(ObservedColumn{p.node_at(pos), partial.column(pos)});
  }
  return reconstruct(p, cols);
}

CodeMatrix systematic_encode(const CodeParams& p, std::span<const Element> data) {
  return encode(systematic_message_matrix(p, data));
}

std::vector<Element> systematic_extract(const CodeParams& p, const CodeMatrix& c) {
  if (!(c.params() == p)) fail(ErrorCode::invalid_argument, "code matrix has different parameters");
  const SystematicLayout layout = systematic_layout(p);
  std::vector<Element> data;
  data.reserve(layout.data_positions.size());
  for (const auto& cell : layout.data_positions) {
    data.push_back(c.entries()(static_cast<std::size_t>(cell.row), p.position(cell.node)));
  }
  return data;
}

Matrix precoding_matrix(const CodeParams& p) {
  const auto b = static_cast<std::size_t>(p.stripe_symbols());
  Matrix out(b, b);
  std::vector<Element> unit(b, Field::zero());
  for (std::size_t j = 0; j < b; ++j) {
    unit[j] = Field::one();
    const auto column = unfill_message_matrix(systematic_message_matrix(p, unit));
    for (std::size_t i = 0; i < b; ++i) out(i, j) = column[i];
    unit[j] = Field::zero();
  }
  return out;
}

}  // namespace mbrr
