#include "dualweight/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "dualweight/errors.hpp"

namespace dw {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot of lengths " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum");
  QVector r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference");
  QVector r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& v) {
  QVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

QVector unit_vector(std::size_t dim, std::size_t index) {
  QVector e(dim);
  e.at(index) = 1;
  return e;
}

QVector primitive_integer(const QVector& v) {
  BigInt den_lcm = 1;
  for (const auto& x : v) {
    BigInt d = x.denominator();
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
  }
  BigInt num_gcd = 0;
  std::vector<BigInt> scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) {
    BigInt s = x.numerator() * (den_lcm / x.denominator());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), s.get_mpz_t());
    scaled.push_back(std::move(s));
  }
  if (num_gcd == 0) throw DimensionMismatch("primitive_integer of the zero vector");
  QVector out;
  out.reserve(v.size());
  for (auto& s : scaled) out.emplace_back(BigInt(s / num_gcd));
  return out;
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("row length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QVector QMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return QVector(s.begin(), s.end());
}

QVector QMatrix::column_vector(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<QVector> QMatrix::row_list() const {
  std::vector<QVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vector(r));
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QMatrix QMatrix::submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
  QMatrix s(rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
  return s;
}

bool QMatrix::symmetric() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
  QMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
      }
    }
  return p;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product");
  QVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) out[i] = dot(a.row(i), v);
  return out;
}

namespace {

using IntRows = std::vector<std::vector<BigInt>>;

// Clears denominators row by row; `scale[r]` is the multiplier applied to row r.
IntRows integer_rows(const QMatrix& m, std::vector<BigInt>& scale) {
  IntRows out(m.rows(), std::vector<BigInt>(m.cols()));
  scale.assign(m.rows(), BigInt(1));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BigInt l = 1;
    for (const auto& x : m.row(r)) {
      BigInt d = x.denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    scale[r] = l;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[r][c] = m(r, c).numerator() * (l / m(r, c).denominator());
    }
  }
  return out;
}

void exact_divide(BigInt& x, const BigInt& d) {
  if (!mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t())) {
    throw InternalError("fraction-free elimination produced an inexact quotient");
  }
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
}

}  // namespace

QMatrix invert(const QMatrix& m) {
  if (!m.square()) throw DimensionMismatch("invert of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<BigInt> scale;
  IntRows a = integer_rows(m, scale);
  // Augment with the identity: [A_int | I].
  for (std::size_t r = 0; r < n; ++r) {
    a[r].resize(2 * n, BigInt(0));
    a[r][n + r] = 1;
  }
  BigInt prev = 1;
  BigInt t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) throw SingularMatrix("rank deficient at column " + std::to_string(k));
    std::swap(a[p], a[k]);
    const BigInt& piv = a[k][k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const BigInt f = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        t = piv * a[i][j];
        if (f != 0) t -= f * a[k][j];
        exact_divide(t, prev);
        a[i][j] = t;
      }
    }
    prev = a[k][k];
  }
  // Left block is now prev * I, right block prev * A_int^{-1}.
  // A = diag(scale)^{-1} A_int, so A^{-1} = A_int^{-1} diag(scale).
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = Rational(a[r][n + c] * scale[c], prev);
  return inv;
}

Rational determinant(const QMatrix& m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<BigInt> scale;
  IntRows a = integer_rows(m, scale);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        exact_divide(t, prev);
        a[i][j] = std::move(t);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  BigInt denom = 1;
  for (const auto& s : scale) denom *= s;
  return Rational(sign * a[n - 1][n - 1], denom);
}

QMatrix block_coefficient_matrix(const QMatrix& a, const QMatrix& b, const QMatrix& c) {
  const std::size_t n = a.rows();
  const std::size_t m = b.rows();
  if (!a.square() || !b.square() || m > n || c.rows() != m || c.cols() != n - m) {
    throw DimensionMismatch("block_coefficient_matrix expects a n*n, b m*m, c m*(n-m)");
  }
  const QMatrix b_inv = invert(b);
  const QMatrix b_inv_c = b_inv * c;
  QMatrix t(n, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) t(i, j) = b_inv(i, j);
    for (std::size_t j = m; j < n; ++j) t(i, j) = -b_inv_c(i, j - m);
  }
  for (std::size_t i = m; i < n; ++i) t(i, i) = 1;
  return a * t;
}

QMatrix rref(const QMatrix& m, std::vector<std::size_t>* pivots) {
  QMatrix r = m;
  std::vector<std::size_t> piv;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < r.cols() && lead_row < r.rows(); ++col) {
    std::size_t p = lead_row;
    while (p < r.rows() && r(p, col).is_zero()) ++p;
    if (p == r.rows()) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(lead_row, j));
    const Rational inv = r(lead_row, col).inverse();
    for (std::size_t j = col; j < r.cols(); ++j) r(lead_row, j) *= inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == lead_row || r(i, col).is_zero()) continue;
      const Rational f = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j) {
        if (!r(lead_row, j).is_zero()) r(i, j) -= f * r(lead_row, j);
      }
    }
    piv.push_back(col);
    ++lead_row;
  }
  if (pivots) *pivots = std::move(piv);
  return r;
}

std::size_t rank(const QMatrix& m) {
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return piv.size();
}

QVector solve(const QMatrix& m, const QVector& rhs) {
  if (!m.square() || rhs.size() != m.rows()) throw DimensionMismatch("solve");
  const std::size_t n = m.rows();
  QMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  std::vector<std::size_t> piv;
  const QMatrix r = rref(aug, &piv);
  if (piv.size() != n || (n > 0 && piv.back() != n - 1)) throw SingularMatrix("solve");
  return r.column_vector(n);
}

bool positive_definite(const QMatrix& m) {
  if (!m.symmetric()) return false;
  QMatrix a = m;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k).sign() <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ", ";
    os << to_string(m.row_vector(r));
  }
  os << "]";
  return os.str();
}

}  // namespace dw
