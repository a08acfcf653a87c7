#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbrr/gf.hpp"
#include "mbrr/linalg.hpp"

namespace mbrr {

/// Node (e, g): rack e, position g inside the rack.
struct NodeId {
  int rack = 0;
  int index = 0;

  friend constexpr auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(NodeId id);

/// Column index sets of the message matrix. j1 holds the degrees tu+u-1,
/// t < helper_racks; j2 the remaining degrees below k; j is their sorted union.
struct IndexSets {
  std::vector<int> j1;
  std::vector<int> j2;
  std::vector<int> j;
};

/// Validated parameters of a rack-aware minimum-bandwidth code with beta = 1.
///
///   n = racks * u nodes, any k of them recover the stripe,
///   k = k_racks * u + k_remainder,
///   k_racks <= helper_racks <= racks - 1,
///   alpha = helper_racks symbols per node,
///   B = k * helper_racks - k_racks * (k_racks - 1) / 2 data symbols per stripe.
///
/// The field must satisfy u | q - 1 and q > n. Evaluation points are
/// xi^e * eta^g with xi primitive and eta of order u.
///
/// Copies share immutable state.
class CodeParams {
 public:
  /// Validates (n, k, u, helper_racks) over GF(2^m). When field_degree is
  /// empty, the smallest m <= 16 with u | 2^m - 1 and 2^m > n is chosen; if
  /// there is none (u even, for one), the smallest prime p > n with
  /// u | p - 1 is used instead.
  static CodeParams create(int n, int k, int u, int helper_racks,
                           std::optional<int> field_degree = std::nullopt);
  /// Same validation over an explicitly given field.
  static CodeParams create(int n, int k, int u, int helper_racks, Field field);

  int n() const noexcept { return s_->n; }
  int k() const noexcept { return s_->k; }
  int u() const noexcept { return s_->u; }
  int rack_count() const noexcept { return s_->n / s_->u; }
  /// floor(k / u)
  int k_racks() const noexcept { return s_->k / s_->u; }
  /// k mod u
  int k_remainder() const noexcept { return s_->k % s_->u; }
  int helper_racks() const noexcept { return s_->d; }
  int alpha() const noexcept { return s_->d; }
  int beta() const noexcept { return 1; }
  /// B, data symbols per stripe.
  int stripe_symbols() const noexcept { return s_->b; }

  const Field& field() const noexcept { return s_->field; }
  Element xi() const noexcept { return s_->xi; }
  Element eta() const noexcept { return s_->eta; }

  const IndexSets& index_sets() const noexcept { return s_->sets; }
  /// |J| = k - k_racks + helper_racks
  std::size_t column_count() const noexcept { return s_->sets.j.size(); }
  /// Position of `degree` in J, or -1 when the degree is not in J.
  int column_of_degree(int degree) const noexcept;
  /// Largest degree in J.
  int max_degree() const noexcept { return s_->sets.j.back(); }

  void check_node(NodeId id) const;
  void check_rack(int rack) const;
  /// Column position of a node in the code matrix: e * u + g.
  std::size_t position(NodeId id) const;
  NodeId node_at(std::size_t position) const;
  std::vector<NodeId> nodes() const;

  /// lambda_(e,g) = xi^e * eta^g
  Element evaluation_point(NodeId id) const;
  /// xi^(e*u), the point of rack e in the leading-coefficient layer.
  Element rack_point(int rack) const;

  /// Message-matrix fill map: for cell (row, column index) the data index it
  /// carries, or -1 for a structural zero. Row-major, helper_racks x |J|.
  std::span<const int> fill_slots() const noexcept { return s_->slots; }
  /// The cell (row, column index) that first receives data symbol s.
  std::pair<int, int> data_cell(int s) const { return s_->data_cells.at(static_cast<std::size_t>(s)); }

  /// Lambda: rows indexed by J, columns by node position.
  const Matrix& encoding_matrix() const noexcept { return s_->lambda; }

  friend bool operator==(const CodeParams& a, const CodeParams& b) noexcept {
    return a.n() == b.n() && a.k() == b.k() && a.u() == b.u() &&
           a.helper_racks() == b.helper_racks() && a.field() == b.field();
  }

 private:
  struct State {
    explicit State(Field f) : field(std::move(f)) {}

    int n = 0, k = 0, u = 0, d = 0, b = 0;
    Field field;
    Element xi, eta;
    IndexSets sets;
    std::vector<int> degree_to_column;
    std::vector<int> slots;
    std::vector<std::pair<int, int>> data_cells;
    std::vector<Element> points;
    std::vector<Element> rack_points;
    Matrix lambda;
  };

  explicit CodeParams(std::shared_ptr<const State> s) : s_(std::move(s)) {}
  static void check_shape(int n, int k, int u, int helper_racks);

  std::shared_ptr<const State> s_;
};

IndexSets index_sets(const CodeParams& p);
Element evaluation_point(const CodeParams& p, NodeId id);

/// The helper_racks x |J| data carrier. Columns follow J; the columns in J1
/// form the symmetric block [[S, T], [T^t, 0]].
class MessageMatrix {
 public:
  /// All-zero matrix.
  explicit MessageMatrix(CodeParams params);
  /// Throws integrity when the symmetry or zero-block structure is violated.
  static MessageMatrix from_matrix(CodeParams params, Matrix entries);

  const CodeParams& params() const noexcept { return params_; }
  const Matrix& entries() const noexcept { return entries_; }

  /// Coefficient of x^degree in row `row`; zero for degrees outside J.
  Element coefficient(int row, int degree) const;
  /// Entry (i, j) of the symmetric block, both in [0, helper_racks).
  Element m1(int i, int j) const;

  /// True when every symmetric pair agrees and the zero block is zero.
  bool is_structured() const;

  friend bool operator==(const MessageMatrix& a, const MessageMatrix& b) {
    return a.params_ == b.params_ && a.entries_ == b.entries_;
  }

 private:
  MessageMatrix(CodeParams params, Matrix entries) : params_(std::move(params)), entries_(std::move(entries)) {}

  CodeParams params_;
  Matrix entries_;
};

/// helper_racks x n code matrix; column e*u+g is what node (e, g) stores.
class CodeMatrix {
 public:
  explicit CodeMatrix(CodeParams params);
  CodeMatrix(CodeParams params, Matrix entries);

  const CodeParams& params() const noexcept { return params_; }
  const Matrix& entries() const noexcept { return entries_; }

  std::vector<Element> column(NodeId id) const;
  void set_column(NodeId id, std::span<const Element> symbols);

  friend bool operator==(const CodeMatrix& a, const CodeMatrix& b) {
    return a.params_ == b.params_ && a.entries_ == b.entries_;
  }

 private:
  CodeParams params_;
  Matrix entries_;
};

/// Places B data symbols into the message matrix: columns in ascending J,
/// rows top-down, skipping structural zeros and cells already fixed by
/// symmetry.
MessageMatrix fill_message_matrix(const CodeParams& p, std::span<const Element> data);
/// Inverse of fill_message_matrix.
std::vector<Element> unfill_message_matrix(const MessageMatrix& m);

}  // namespace mbrr
