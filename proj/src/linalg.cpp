#include "mbrr/linalg.hpp"

#include <algorithm>
#include <string>

#include "mbrr/error.hpp"

namespace mbrr {

namespace {

void check_distinct(std::span<const Element> points) {
  std::vector<Element> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::duplicate_point, "interpolation points are not pairwise distinct");
  }
}

}  // namespace

int Poly::degree() const noexcept {
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j].value != 0) return static_cast<int>(j);
  }
  return -1;
}

Matrix Matrix::identity(std::size_t size) {
  Matrix m(size, size);
  for (std::size_t i = 0; i < size; ++i) m(i, i) = Field::one();
  return m;
}

std::vector<Element> Matrix::column(std::size_t c) const {
  std::vector<Element> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Element poly_eval(const Field& f, const Poly& p, Element x) {
  Element acc = Field::zero();
  for (std::size_t j = p.coeffs.size(); j-- > 0;) {
    acc = f.add(f.mul(acc, x), p.coeffs[j]);
  }
  return acc;
}

Poly interpolate(const Field& f, std::span<const Element> points, std::span<const Element> values) {
  if (points.size() != values.size()) {
    fail(ErrorCode::dimension_mismatch, "interpolate: " + std::to_string(points.size()) +
                                            " points but " + std::to_string(values.size()) +
                                            " values");
  }
  if (points.empty()) fail(ErrorCode::invalid_argument, "interpolate: no points");
  check_distinct(points);

  const std::size_t t = points.size();
  // Divided differences in place: dd[i] becomes f[x_0, ..., x_i].
  std::vector<Element> dd(values.begin(), values.end());
  for (std::size_t level = 1; level < t; ++level) {
    for (std::size_t i = t - 1; i >= level; --i) {
      const Element num = f.sub(dd[i], dd[i - 1]);
      const Element den = f.sub(points[i], points[i - level]);
      dd[i] = f.div(num, den);
    }
  }

  // Expand the Newton form into monomial coefficients.
  std::vector<Element> c(t, Field::zero());
  c[0] = dd[t - 1];
  std::size_t len = 1;
  for (std::size_t i = t - 1; i-- > 0;) {
    // c <- c * (x - points[i]) + dd[i]
    c[len] = c[len - 1];
    for (std::size_t j = len - 1; j > 0; --j) {
      c[j] = f.sub(c[j - 1], f.mul(c[j], points[i]));
    }
    c[0] = f.sub(dd[i], f.mul(c[0], points[i]));
    ++len;
  }
  return Poly{std::move(c)};
}

std::vector<Element> vandermonde_solve(const Field& f, std::span<const Element> points,
                                       std::span<const Element> rhs) {
  return interpolate(f, points, rhs).coeffs;
}

std::vector<Element> solve_linear(const Field& f, const Matrix& a, std::span<const Element> b) {
  if (a.rows() != a.cols()) {
    fail(ErrorCode::dimension_mismatch, "solve_linear: matrix is " + std::to_string(a.rows()) +
                                            "x" + std::to_string(a.cols()) + ", not square");
  }
  if (b.size() != a.rows()) {
    fail(ErrorCode::dimension_mismatch, "solve_linear: rhs length " + std::to_string(b.size()) +
                                            " != " + std::to_string(a.rows()));
  }
  const std::size_t n = a.rows();
  Matrix work = a;
  std::vector<Element> rhs(b.begin(), b.end());

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col).value == 0) ++pivot;
    if (pivot == n) {
      fail(ErrorCode::singular_matrix, "solve_linear: no pivot in column " + std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(work(pivot, c), work(col, c));
      std::swap(rhs[pivot], rhs[col]);
    }
    const Element scale = f.inv(work(col, col));
    for (std::size_t c = col; c < n; ++c) work(col, c) = f.mul(work(col, c), scale);
    rhs[col] = f.mul(rhs[col], scale);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Element factor = work(r, col);
      if (factor.value == 0) continue;
      for (std::size_t c = col; c < n; ++c) {
        work(r, c) = f.sub(work(r, c), f.mul(factor, work(col, c)));
      }
      rhs[r] = f.sub(rhs[r], f.mul(factor, rhs[col]));
    }
  }
  return rhs;
}

std::vector<std::size_t> independent_rows(const Field& f, const Matrix& a) {
  // Incremental basis in reduced form, keyed by pivot column.
  std::vector<std::vector<Element>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < a.rows() && basis.size() < a.cols(); ++r) {
    std::vector<Element> v(a.row(r).begin(), a.row(r).end());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Element factor = v[pivots[b]];
      if (factor.value == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        v[c] = f.sub(v[c], f.mul(factor, basis[b][c]));
      }
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](Element e) { return e.value != 0; });
    if (lead == v.end()) continue;
    const auto pivot_col = static_cast<std::size_t>(lead - v.begin());
    const Element scale = f.inv(*lead);
    for (auto& e : v) e = f.mul(e, scale);
    // keep the basis reduced in the new pivot column
    for (auto& row : basis) {
      const Element factor = row[pivot_col];
      if (factor.value == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) row[c] = f.sub(row[c], f.mul(factor, v[c]));
    }
    basis.push_back(std::move(v));
    pivots.push_back(pivot_col);
    chosen.push_back(r);
  }
  return chosen;
}

Matrix matmul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorCode::dimension_mismatch, "matmul: " + std::to_string(a.rows()) + "x" +
                                            std::to_string(a.cols()) + " times " +
                                            std::to_string(b.rows()) + "x" +
                                            std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Element factor = a(i, l);
      if (factor.value == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = f.add(out(i, j), f.mul(factor, b(l, j)));
      }
    }
  }
  return out;
}

std::vector<Element> matvec(const Field& f, const Matrix& a, std::span<const Element> v) {
  if (a.cols() != v.size()) {
    fail(ErrorCode::dimension_mismatch, "matvec: vector length " + std::to_string(v.size()) +
                                            " != " + std::to_string(a.cols()));
  }
  std::vector<Element> out(a.rows(), Field::zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  }
  return out;
}

}  // namespace mbrr
