#include "mbrr/encode.hpp"

#include <string>

#include "mbrr/error.hpp"

namespace mbrr {

Poly row_polynomial(const MessageMatrix& m, int row) {
  const CodeParams& p = m.params();
  if (row < 0 || row >= p.helper_racks()) {
    fail(ErrorCode::out_of_range, "row polynomial index " + std::to_string(row) + " out of range");
  }
  Poly f{std::vector<Element>(static_cast<std::size_t>(p.max_degree()) + 1, Field::zero())};
  const auto& j = p.index_sets().j;
  for (std::size_t c = 0; c < j.size(); ++c) {
    f.coeffs[static_cast<std::size_t>(j[c])] = m.entries()(static_cast<std::size_t>(row), c);
  }
  return f;
}

EncodingMatrix encoding_matrix(const CodeParams& p) {
  return EncodingMatrix{p.index_sets().j, p.encoding_matrix()};
}

CodeMatrix encode(const MessageMatrix& m) {
  const CodeParams& p = m.params();
  return CodeMatrix(p, matmul(p.field(), m.entries(), p.encoding_matrix()));
}

std::vector<Element> node_column(const MessageMatrix& m, NodeId id) {
  const CodeParams& p = m.params();
  const Element x = p.evaluation_point(id);
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(p.alpha()));
  for (int i = 0; i < p.helper_racks(); ++i) {
    out.push_back(poly_eval(p.field(), row_polynomial(m, i), x));
  }
  return out;
}

CodeMatrix encode_by_evaluation(const MessageMatrix& m) {
  const CodeParams& p = m.params();
  std::vector<Poly> rows;
  for (int i = 0; i < p.helper_racks(); ++i) rows.push_back(row_polynomial(m, i));

  CodeMatrix c(p);
  std::vector<Element> column(rows.size());
  for (const NodeId id : p.nodes()) {
    const Element x = p.evaluation_point(id);
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = poly_eval(p.field(), rows[i], x);
    c.set_column(id, column);
  }
  return c;
}

}  // namespace mbrr
