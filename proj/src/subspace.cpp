#include "dualweight/subspace.hpp"

#include "dualweight/errors.hpp"

namespace dw {

namespace {

void check_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": ambient dims " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

}  // namespace

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<QVector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  for (const auto& v : vectors) check_dim(v.size(), ambient_dim, "span");
  std::vector<std::size_t> piv;
  const QMatrix r = rref(QMatrix::from_rows(vectors, ambient_dim), &piv);
  for (std::size_t i = 0; i < piv.size(); ++i) s.basis_.push_back(r.row_vector(i));
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<QVector> e;
  for (std::size_t i = 0; i < ambient_dim; ++i) e.push_back(unit_vector(ambient_dim, i));
  return span(ambient_dim, e);
}

std::vector<QVector> Subspace::annihilator() const { return kernel(basis_, dim_).basis(); }

Subspace kernel(const std::vector<QVector>& functionals, std::size_t ambient_dim) {
  if (functionals.empty()) return Subspace::full(ambient_dim);
  for (const auto& f : functionals) check_dim(f.size(), ambient_dim, "kernel");
  std::vector<std::size_t> piv;
  const QMatrix r = rref(QMatrix::from_rows(functionals, ambient_dim), &piv);
  std::vector<bool> is_pivot(ambient_dim, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<QVector> null_basis;
  for (std::size_t free = 0; free < ambient_dim; ++free) {
    if (is_pivot[free]) continue;
    QVector v(ambient_dim);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    null_basis.push_back(std::move(v));
  }
  return Subspace::span(ambient_dim, null_basis);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "intersect");
  auto fs = a.annihilator();
  const auto fb = b.annihilator();
  fs.insert(fs.end(), fb.begin(), fb.end());
  return kernel(fs, a.ambient_dim());
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "sum");
  auto vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient_dim(), vs);
}

bool contains(const Subspace& s, const QVector& v) {
  check_dim(s.ambient_dim(), v.size(), "contains");
  for (const auto& f : s.annihilator()) {
    if (!dot(f, v).is_zero()) return false;
  }
  return true;
}

bool is_subspace_of(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "is_subspace_of");
  const auto ann = b.annihilator();
  for (const auto& v : a.basis())
    for (const auto& f : ann)
      if (!dot(f, v).is_zero()) return false;
  return true;
}

bool is_direct_sum(const Subspace& a, const Subspace& b, const Subspace& target) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "is_direct_sum");
  check_dim(a.ambient_dim(), target.ambient_dim(), "is_direct_sum");
  return a.dim() + b.dim() == target.dim() && sum(a, b) == target && intersect(a, b).trivial();
}

std::pair<QVector, QVector> split_direct_sum(const Subspace& a, const Subspace& b, const QVector& v) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "split_direct_sum");
  check_dim(a.ambient_dim(), v.size(), "split_direct_sum");
  const std::size_t n = a.ambient_dim();
  const std::size_t k = a.dim() + b.dim();
  // Columns are the basis vectors; solve the (overdetermined) system by rref.
  QMatrix aug(n, k + 1);
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = a.basis()[j][i];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, a.dim() + j) = b.basis()[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, k) = v[i];
  std::vector<std::size_t> piv;
  const QMatrix r = rref(aug, &piv);
  if (piv.size() != k || (k > 0 && piv.back() != k - 1)) {
    throw PreconditionViolated("vector is not in the direct sum " + to_string(v));
  }
  QVector pa(n), pb(n);
  for (std::size_t j = 0; j < a.dim(); ++j) pa = pa + r(j, k) * a.basis()[j];
  for (std::size_t j = 0; j < b.dim(); ++j) pb = pb + r(a.dim() + j, k) * b.basis()[j];
  return {pa, pb};
}

QMatrix projection_along(const Subspace& a, const Subspace& b) {
  check_dim(a.ambient_dim(), b.ambient_dim(), "projection_along");
  const std::size_t n = a.ambient_dim();
  const std::size_t m = a.dim() + b.dim();
  if (m == 0) return QMatrix(n, n);
  QMatrix basis(n, m);
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = a.basis()[j][i];
  for (std::size_t j = 0; j < b.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) basis(i, a.dim() + j) = b.basis()[j][i];
  if (rank(basis) != m) throw PreconditionViolated("projection_along: summands intersect");
  // Left inverse (M^T M)^-1 M^T recovers coordinates of vectors in the sum.
  const QMatrix left = invert(basis.transpose() * basis) * basis.transpose();
  QMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Rational x;
      for (std::size_t j = 0; j < b.dim(); ++j) x += b.basis()[j][i] * left(a.dim() + j, k);
      p(i, k) = x;
    }
  return p;
}

}  // namespace dw
