#include "dualweight/cone.hpp"

#include <algorithm>
#include <cstdint>

#include "dualweight/errors.hpp"
#include "dualweight/subspace.hpp"

namespace dw {

namespace {

// Set of constraint rows on which a ray vanishes.
class RowBits {
 public:
  explicit RowBits(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool superset_of(const RowBits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((o.words_[k] & ~words_[k]) != 0) return false;
    return true;
  }
  friend RowBits operator&(RowBits a, const RowBits& b) {
    for (std::size_t k = 0; k < a.words_.size(); ++k) a.words_[k] &= b.words_[k];
    return a;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  QVector v;
  RowBits zeros;
};

// Columns of m as vectors.
std::vector<QVector> columns(const QMatrix& m) {
  std::vector<QVector> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column_vector(c));
  return out;
}

// Matrix whose columns are the given vectors.
QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

}  // namespace

std::vector<QVector> pointed_cone_rays(const QMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t k = a.cols();
  if (k == 0) return {};
  // Seed with k independent rows: their cone is simplicial with rays the
  // columns of the inverse of the seed block.
  std::vector<std::size_t> seed;
  std::vector<QVector> chosen;
  for (std::size_t r = 0; r < m && seed.size() < k; ++r) {
    chosen.push_back(a.row_vector(r));
    if (rank(QMatrix::from_rows(chosen, k)) == chosen.size()) {
      seed.push_back(r);
    } else {
      chosen.pop_back();
    }
  }
  if (seed.size() != k) throw PreconditionViolated("constraint matrix does not have full column rank");
  const QMatrix seed_inv = invert(QMatrix::from_rows(chosen, k));
  std::vector<bool> processed(m, false);
  for (auto r : seed) processed[r] = true;

  std::vector<Ray> rays;
  for (const auto& col : columns(seed_inv)) {
    Ray ray{primitive_integer(col), RowBits(m)};
    for (std::size_t r = 0; r < m; ++r)
      if (processed[r] && dot(a.row(r), ray.v).is_zero()) ray.zeros.set(r);
    rays.push_back(std::move(ray));
  }

  for (std::size_t r = 0; r < m; ++r) {
    if (processed[r]) continue;
    std::vector<Rational> value;
    value.reserve(rays.size());
    for (const auto& ray : rays) value.push_back(dot(a.row(r), ray.v));
    std::vector<std::size_t> plus, minus;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const int s = value[i].sign();
      if (s > 0) plus.push_back(i);
      if (s < 0) minus.push_back(i);
      if (s >= 0) {
        Ray kept = rays[i];
        if (s == 0) kept.zeros.set(r);
        next.push_back(std::move(kept));
      }
    }
    for (auto p : plus) {
      for (auto q : minus) {
        const RowBits common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t != p && t != q && rays[t].zeros.superset_of(common)) adjacent = false;
        }
        if (!adjacent) continue;
        // value[p] > 0 > value[q]; the combination vanishes on row r.
        QVector v = value[p] * rays[q].v - value[q] * rays[p].v;
        Ray fresh{primitive_integer(v), common};
        fresh.zeros.set(r);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
    processed[r] = true;
  }

  std::vector<QVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.v));
  std::sort(out.begin(), out.end());
  return out;
}

ConeGenerators extreme_rays(const std::vector<QVector>& equalities, const std::vector<QVector>& inequalities,
                            std::size_t ambient_dim) {
  for (const auto& f : inequalities)
    if (f.size() != ambient_dim) throw DimensionMismatch("inequality length");
  ConeGenerators gen;
  gen.ambient_dim = ambient_dim;
  // x = L y parametrizes the equality subspace.
  const Subspace eq_space = kernel(equalities, ambient_dim);
  const std::size_t k = eq_space.dim();
  if (k == 0) return gen;
  const QMatrix l = from_columns(eq_space.basis(), ambient_dim);

  std::vector<QVector> restricted;
  for (const auto& f : inequalities) {
    QVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = dot(f, eq_space.basis()[j]);
    restricted.push_back(std::move(row));
  }
  const Subspace lin = kernel(restricted, k);
  for (const auto& v : lin.basis()) gen.lineality.push_back(primitive_integer(l * v));
  if (lin.dim() == k) return gen;

  // y = P z with P spanning the orthogonal complement of the lineality space.
  const Subspace complement = kernel(lin.basis(), k);
  const QMatrix p = from_columns(complement.basis(), k);
  const QMatrix a = QMatrix::from_rows(restricted, k) * p;
  const QMatrix lp = l * p;
  for (const auto& z : pointed_cone_rays(a)) gen.rays.push_back(primitive_integer(lp * z));
  std::sort(gen.rays.begin(), gen.rays.end());
  return gen;
}

}  // namespace dw
