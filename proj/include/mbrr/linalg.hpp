#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mbrr/gf.hpp"

namespace mbrr {

/// Dense polynomial; coeffs[j] multiplies x^j. The declared degree bound is
/// coeffs.size() - 1, trailing zeros allowed.
struct Poly {
  std::vector<Element> coeffs;

  std::size_t degree_bound() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// Index of the highest nonzero coefficient, or -1 for the zero polynomial.
  int degree() const noexcept;

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Row-major dense matrix over a field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static Matrix identity(std::size_t size);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::vector<Element> column(std::size_t c) const;

  const std::vector<Element>& entries() const noexcept { return entries_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> entries_;
};

/// Horner evaluation.
Element poly_eval(const Field& f, const Poly& p, Element x);

/// Unique polynomial of degree <= t-1 through (points[i], values[i]),
/// computed with Newton divided differences.
Poly interpolate(const Field& f, std::span<const Element> points, std::span<const Element> values);

/// Coefficients c with sum_j c_j * points[i]^j = rhs[i].
std::vector<Element> vandermonde_solve(const Field& f, std::span<const Element> points,
                                       std::span<const Element> rhs);

/// Square solve by Gaussian elimination with first-nonzero pivoting.
/// Throws singular_matrix when a column has no pivot.
std::vector<Element> solve_linear(const Field& f, const Matrix& a, std::span<const Element> b);

/// Indices of a maximal set of linearly independent rows, in ascending order.
std::vector<std::size_t> independent_rows(const Field& f, const Matrix& a);

Matrix matmul(const Field& f, const Matrix& a, const Matrix& b);
std::vector<Element> matvec(const Field& f, const Matrix& a, std::span<const Element> v);

}  // namespace mbrr
