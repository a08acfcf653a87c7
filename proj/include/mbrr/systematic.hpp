#pragma once

#include <span>
#include <vector>

#include "mbrr/layout.hpp"
#include "mbrr/linalg.hpp"

namespace mbrr {

/// One cell of the code matrix: row `row` of node `node`.
struct CodeCell {
  int row = 0;
  NodeId node;

  friend constexpr auto operator<=>(const CodeCell&, const CodeCell&) = default;
};

/// Placement of the B data symbols in the first k columns. Cells
/// (i, (e, u-1)) with e <= k_racks-2 and e < i <= k_racks-1 are redundant;
/// the rest hold data, filled column by column.
struct SystematicLayout {
  std::vector<CodeCell> data_positions;
  std::vector<CodeCell> redundant_positions;
};

SystematicLayout systematic_layout(const CodeParams& p);

/// Message matrix whose code places `data` uncoded at the layout's data
/// positions. Steps:
///   - place the data in the first k columns;
///   - interpolate the leading coefficients that are fully determined
///     (rack e < k_racks, rows [0, e] and [k_racks, alpha));
///   - solve T from the bottom rows, then S row by row;
///   - fill the redundant cells from the completed leading coefficients;
///   - reconstruct M from the k completed columns.
MessageMatrix systematic_message_matrix(const CodeParams& p, std::span<const Element> data);

CodeMatrix systematic_encode(const CodeParams& p, std::span<const Element> data);

/// Reads the data back from the first k columns of a systematic code matrix.
std::vector<Element> systematic_extract(const CodeParams& p, const CodeMatrix& c);

/// B x B matrix P with unfill(systematic_message_matrix(data)) = P * data.
Matrix precoding_matrix(const CodeParams& p);

}  // namespace mbrr
