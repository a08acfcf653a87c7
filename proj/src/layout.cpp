#include "mbrr/layout.hpp"

#include <algorithm>
#include <limits>

#include "mbrr/error.hpp"

namespace mbrr {

namespace {

bool field_fits(int m, int n, int u) {
  const std::uint32_t q = 1u << m;
  return (q - 1) % static_cast<std::uint32_t>(u) == 0 && q > static_cast<std::uint32_t>(n);
}

std::string describe(int n, int k, int u, int d) {
  return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ", u=" + std::to_string(u) +
         ", d=" + std::to_string(d) + ")";
}

}  // namespace

std::string to_string(NodeId id) {
  return "(" + std::to_string(id.rack) + "," + std::to_string(id.index) + ")";
}

void CodeParams::check_shape(int n, int k, int u, int d) {
  const std::string where = describe(n, k, u, d);
  if (u < 2) fail(ErrorCode::parameter_range, where + ": rack size u must be at least 2");
  if (n <= 0 || n % u != 0) {
    fail(ErrorCode::parameter_divisibility, where + ": u must divide n");
  }
  if (k < u) fail(ErrorCode::parameter_range, where + ": k must be at least u");
  if (k >= n) fail(ErrorCode::parameter_range, where + ": k must be less than n");
  const int racks = n / u;
  const int k_racks = k / u;
  if (d < k_racks) {
    fail(ErrorCode::parameter_range, where + ": helper racks d=" + std::to_string(d) +
                                         " below k_racks=" + std::to_string(k_racks));
  }
  if (d > racks - 1) {
    fail(ErrorCode::parameter_range, where + ": helper racks d=" + std::to_string(d) +
                                         " exceeds racks-1=" + std::to_string(racks - 1));
  }
}

CodeParams CodeParams::create(int n, int k, int u, int helper_racks, std::optional<int> field_degree) {
  check_shape(n, k, u, helper_racks);
  const std::string where = describe(n, k, u, helper_racks);
  if (field_degree) {
    const int m = *field_degree;
    if (m < 1 || m > Field::kMaxDegree) {
      fail(ErrorCode::out_of_range, "field degree m=" + std::to_string(m) + " outside [1, 16]");
    }
    if (!field_fits(m, n, u)) {
      fail(ErrorCode::field_unavailable,
           where + ": GF(2^" + std::to_string(m) + ") needs u | q-1 and q > n");
    }
    return create(n, k, u, helper_racks, Field(m));
  }
  for (int m = 1; m <= Field::kMaxDegree; ++m) {
    if (field_fits(m, n, u)) return create(n, k, u, helper_racks, Field(m));
  }
  for (auto p = static_cast<std::uint32_t>(n) + 1; p <= Field::kMaxPrime; ++p) {
    if ((p - 1) % static_cast<std::uint32_t>(u) == 0 && Field::is_prime(p)) {
      return create(n, k, u, helper_racks, Field::prime(p));
    }
  }
  fail(ErrorCode::field_unavailable, where + ": no supported field has u | q-1 and q > n");
}

CodeParams CodeParams::create(int n, int k, int u, int helper_racks, Field field) {
  check_shape(n, k, u, helper_racks);
  const int d = helper_racks;
  const std::string where = describe(n, k, u, d);
  if ((field.size() - 1) % static_cast<std::uint32_t>(u) != 0 || field.size() <= static_cast<std::uint32_t>(n)) {
    fail(ErrorCode::field_unavailable, where + ": field of size " + std::to_string(field.size()) +
                                           " needs u | q-1 and q > n");
  }
  const int racks = n / u;
  const int k_racks = k / u;

  const std::int64_t b64 = static_cast<std::int64_t>(k) * d -
                           static_cast<std::int64_t>(k_racks) * (k_racks - 1) / 2;
  if (b64 > std::numeric_limits<int>::max()) {
    fail(ErrorCode::parameter_range, where + ": stripe too large");
  }

  auto s = std::make_shared<State>(std::move(field));
  s->n = n;
  s->k = k;
  s->u = u;
  s->d = d;
  s->b = static_cast<int>(b64);
  s->xi = s->field.primitive_element();
  s->eta = s->field.element_of_order(static_cast<std::uint32_t>(u));

  for (int t = 0; t < d; ++t) s->sets.j1.push_back(t * u + u - 1);
  for (int j = 0; j < k; ++j) {
    if (j % u != u - 1) s->sets.j2.push_back(j);
  }
  s->sets.j = s->sets.j1;
  s->sets.j.insert(s->sets.j.end(), s->sets.j2.begin(), s->sets.j2.end());
  std::sort(s->sets.j.begin(), s->sets.j.end());

  s->degree_to_column.assign(static_cast<std::size_t>(s->sets.j.back()) + 1, -1);
  for (std::size_t c = 0; c < s->sets.j.size(); ++c) {
    s->degree_to_column[static_cast<std::size_t>(s->sets.j[c])] = static_cast<int>(c);
  }

  // Fill map. Cell (i, tu+u-1) belongs to the symmetric block at (i, t);
  // its mirror (t, i) sits in column iu+u-1, visited earlier iff i < t.
  const std::size_t cols = s->sets.j.size();
  s->slots.assign(static_cast<std::size_t>(d) * cols, -1);
  int next = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    const int degree = s->sets.j[c];
    const bool in_block = degree % u == u - 1 && degree / u < d;
    const int t = degree / u;
    for (int i = 0; i < d; ++i) {
      int& slot = s->slots[static_cast<std::size_t>(i) * cols + c];
      if (!in_block) {
        slot = next++;
        s->data_cells.emplace_back(i, static_cast<int>(c));
      } else if (i >= k_racks && t >= k_racks) {
        slot = -1;
      } else if (i < t) {
        const auto mirror_col = static_cast<std::size_t>(s->degree_to_column[static_cast<std::size_t>(i * u + u - 1)]);
        slot = s->slots[static_cast<std::size_t>(t) * cols + mirror_col];
      } else {
        slot = next++;
        s->data_cells.emplace_back(i, static_cast<int>(c));
      }
    }
  }
  if (next != s->b) {
    fail(ErrorCode::integrity, where + ": fill map produced " + std::to_string(next) +
                                   " free entries, expected B=" + std::to_string(s->b));
  }

  const Field& f = s->field;
  for (int e = 0; e < racks; ++e) {
    s->rack_points.push_back(f.pow(s->xi, static_cast<std::int64_t>(e) * u));
    for (int g = 0; g < u; ++g) {
      s->points.push_back(f.mul(f.pow(s->xi, e), f.pow(s->eta, g)));
    }
  }
  s->lambda = Matrix(cols, static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t node = 0; node < static_cast<std::size_t>(n); ++node) {
      s->lambda(r, node) = f.pow(s->points[node], s->sets.j[r]);
    }
  }
  return CodeParams(std::move(s));
}

int CodeParams::column_of_degree(int degree) const noexcept {
  if (degree < 0 || static_cast<std::size_t>(degree) >= s_->degree_to_column.size()) return -1;
  return s_->degree_to_column[static_cast<std::size_t>(degree)];
}

void CodeParams::check_rack(int rack) const {
  if (rack < 0 || rack >= rack_count()) {
    fail(ErrorCode::out_of_range, "rack " + std::to_string(rack) + " outside [0, " +
                                      std::to_string(rack_count() - 1) + "]");
  }
}

void CodeParams::check_node(NodeId id) const {
  if (id.rack < 0 || id.rack >= rack_count() || id.index < 0 || id.index >= u()) {
    fail(ErrorCode::out_of_range, "node " + to_string(id) + " outside the " +
                                      std::to_string(rack_count()) + "x" + std::to_string(u()) +
                                      " grid");
  }
}

std::size_t CodeParams::position(NodeId id) const {
  check_node(id);
  return static_cast<std::size_t>(id.rack) * static_cast<std::size_t>(u()) +
         static_cast<std::size_t>(id.index);
}

NodeId CodeParams::node_at(std::size_t position) const {
  if (position >= static_cast<std::size_t>(n())) {
    fail(ErrorCode::out_of_range, "node position " + std::to_string(position) + " >= n");
  }
  const auto uu = static_cast<std::size_t>(u());
  return NodeId{static_cast<int>(position / uu), static_cast<int>(position % uu)};
}

std::vector<NodeId> CodeParams::nodes() const {
  std::vector<NodeId> out;
  out.reserve(static_cast<std::size_t>(n()));
  for (std::size_t p = 0; p < static_cast<std::size_t>(n()); ++p) out.push_back(node_at(p));
  return out;
}

Element CodeParams::evaluation_point(NodeId id) const { return s_->points[position(id)]; }

Element CodeParams::rack_point(int rack) const {
  check_rack(rack);
  return s_->rack_points[static_cast<std::size_t>(rack)];
}

IndexSets index_sets(const CodeParams& p) { return p.index_sets(); }

Element evaluation_point(const CodeParams& p, NodeId id) { return p.evaluation_point(id); }

MessageMatrix::MessageMatrix(CodeParams params)
    : params_(std::move(params)),
      entries_(static_cast<std::size_t>(params_.helper_racks()), params_.column_count()) {}

MessageMatrix MessageMatrix::from_matrix(CodeParams params, Matrix entries) {
  if (entries.rows() != static_cast<std::size_t>(params.helper_racks()) ||
      entries.cols() != params.column_count()) {
    fail(ErrorCode::dimension_mismatch, "message matrix must be " +
                                            std::to_string(params.helper_racks()) + "x" +
                                            std::to_string(params.column_count()));
  }
  MessageMatrix m(std::move(params), std::move(entries));
  if (!m.is_structured()) {
    fail(ErrorCode::integrity, "message matrix violates the symmetric/zero block structure");
  }
  return m;
}

Element MessageMatrix::coefficient(int row, int degree) const {
  if (row < 0 || row >= params_.helper_racks()) {
    fail(ErrorCode::out_of_range, "message row " + std::to_string(row) + " out of range");
  }
  const int c = params_.column_of_degree(degree);
  if (c < 0) return Field::zero();
  return entries_(static_cast<std::size_t>(row), static_cast<std::size_t>(c));
}

Element MessageMatrix::m1(int i, int j) const {
  const int d = params_.helper_racks();
  if (j < 0 || j >= d) fail(ErrorCode::out_of_range, "block column " + std::to_string(j));
  return coefficient(i, j * params_.u() + params_.u() - 1);
}

bool MessageMatrix::is_structured() const {
  const auto slots = params_.fill_slots();
  const std::size_t cols = params_.column_count();
  for (std::size_t cell = 0; cell < slots.size(); ++cell) {
    const Element value = entries_(cell / cols, cell % cols);
    if (slots[cell] < 0) {
      if (value.value != 0) return false;
      continue;
    }
    const auto [r, c] = params_.data_cell(slots[cell]);
    if (entries_(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) != value) return false;
  }
  return true;
}

CodeMatrix::CodeMatrix(CodeParams params)
    : params_(std::move(params)),
      entries_(static_cast<std::size_t>(params_.alpha()), static_cast<std::size_t>(params_.n())) {}

CodeMatrix::CodeMatrix(CodeParams params, Matrix entries)
    : params_(std::move(params)), entries_(std::move(entries)) {
  if (entries_.rows() != static_cast<std::size_t>(params_.alpha()) ||
      entries_.cols() != static_cast<std::size_t>(params_.n())) {
    fail(ErrorCode::dimension_mismatch, "code matrix must be alpha x n");
  }
}

std::vector<Element> CodeMatrix::column(NodeId id) const { return entries_.column(params_.position(id)); }

void CodeMatrix::set_column(NodeId id, std::span<const Element> symbols) {
  const std::size_t c = params_.position(id);
  if (symbols.size() != entries_.rows()) {
    fail(ErrorCode::dimension_mismatch, "column for node " + to_string(id) + " must hold alpha=" +
                                            std::to_string(entries_.rows()) + " symbols");
  }
  for (std::size_t r = 0; r < entries_.rows(); ++r) entries_(r, c) = symbols[r];
}

MessageMatrix fill_message_matrix(const CodeParams& p, std::span<const Element> data) {
  if (data.size() != static_cast<std::size_t>(p.stripe_symbols())) {
    fail(ErrorCode::dimension_mismatch, "fill: expected B=" + std::to_string(p.stripe_symbols()) +
                                            " symbols, got " + std::to_string(data.size()));
  }
  const auto slots = p.fill_slots();
  const std::size_t cols = p.column_count();
  Matrix entries(static_cast<std::size_t>(p.helper_racks()), cols);
  for (std::size_t cell = 0; cell < slots.size(); ++cell) {
    if (slots[cell] < 0) continue;
    const Element v = data[static_cast<std::size_t>(slots[cell])];
    if (!p.field().contains(v)) fail(ErrorCode::field_mismatch, "fill: data symbol outside field");
    entries(cell / cols, cell % cols) = v;
  }
  return MessageMatrix::from_matrix(p, std::move(entries));
}

std::vector<Element> unfill_message_matrix(const MessageMatrix& m) {
  if (!m.is_structured()) {
    fail(ErrorCode::integrity, "unfill: message matrix violates the symmetric/zero block structure");
  }
  const CodeParams& p = m.params();
  std::vector<Element> data(static_cast<std::size_t>(p.stripe_symbols()));
  for (int s = 0; s < p.stripe_symbols(); ++s) {
    const auto [r, c] = p.data_cell(s);
    data[static_cast<std::size_t>(s)] = m.entries()(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  }
  return data;
}

}  // namespace mbrr
