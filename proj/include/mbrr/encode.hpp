#pragma once

#include <span>
#include <vector>

#include "mbrr/layout.hpp"
#include "mbrr/linalg.hpp"

namespace mbrr {

/// Lambda = (lambda_(e,g)^j), rows j in J, one column per node.
struct EncodingMatrix {
  std::vector<int> row_degrees;
  Matrix lambda;
};

/// f_i(x) = sum_{j in J} m_{i,j} x^j, dense up to degree max(J).
Poly row_polynomial(const MessageMatrix& m, int row);

EncodingMatrix encoding_matrix(const CodeParams& p);

/// C = M * Lambda.
CodeMatrix encode(const MessageMatrix& m);
/// Same code matrix, computed node by node with Horner evaluation of the
/// row polynomials.
CodeMatrix encode_by_evaluation(const MessageMatrix& m);

/// (f_0(lambda), ..., f_{alpha-1}(lambda)) at lambda = lambda_(e,g),
/// without materializing Lambda.
std::vector<Element> node_column(const MessageMatrix& m, NodeId id);

}  // namespace mbrr
