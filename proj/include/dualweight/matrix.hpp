#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dualweight/rational.hpp"

namespace dw {

using QVector = std::vector<Rational>;

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator*(const Rational& s, const QVector& v);
bool is_zero(std::span<const Rational> v);
QVector unit_vector(std::size_t dim, std::size_t index);

/// Rescales a nonzero vector to the primitive integer vector on the same ray
/// (positive multiple, coprime integer entries).
QVector primitive_integer(const QVector& v);

std::string to_string(const QVector& v);

/// Dense row-major rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  QVector row_vector(std::size_t r) const;
  QVector column_vector(std::size_t c) const;
  std::vector<QVector> row_list() const;

  QMatrix transpose() const;
  /// Rows `rs` and columns `cs`, in the given order.
  QMatrix submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const;
  bool symmetric() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);
  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact inverse by fraction-free Gauss-Jordan elimination.
/// Throws SingularMatrix or DimensionMismatch (non-square).
QMatrix invert(const QMatrix& m);

/// Determinant via Bareiss elimination.
Rational determinant(const QMatrix& m);

/// D = a * [[b^-1, -b^-1 c], [0, Id]], the change of coordinates from the
/// w-basis to the mixed basis (first m simple roots, remaining dual weights).
QMatrix block_coefficient_matrix(const QMatrix& a, const QMatrix& b, const QMatrix& c);

/// Reduced row echelon form; `pivots` receives pivot columns when non-null.
QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const QMatrix& m);

/// Unique x with m x = rhs for square nonsingular m.
QVector solve(const QMatrix& m, const QVector& rhs);

/// All pivots of the symmetric LDL^T factorization are positive.
bool positive_definite(const QMatrix& m);

std::string to_string(const QMatrix& m);

}  // namespace dw
