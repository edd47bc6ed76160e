#include "dualweight/parabolic.hpp"

#include <algorithm>

#include "dualweight/errors.hpp"

namespace dw {

int RelativeWeights::local(int beta) const {
  const auto it = std::find(index.begin(), index.end(), beta);
  if (it == index.end()) throw UnknownRoot("root " + std::to_string(beta + 1) + " outside " + to_string(members));
  return static_cast<int>(it - index.begin());
}

namespace {

QVector embed(const QVector& local, const std::vector<int>& index, int ambient) {
  QVector v(static_cast<std::size_t>(ambient));
  for (std::size_t k = 0; k < index.size(); ++k) v[static_cast<std::size_t>(index[k])] = local[k];
  return v;
}

void require_subset(RootSet inner, RootSet outer, const char* what) {
  if (!inner.subset_of(outer)) {
    throw SubsetViolation(std::string(what) + ": " + to_string(inner) + " is not inside " + to_string(outer));
  }
}

}  // namespace

QVector RelativeWeights::dual(int beta) const {
  return embed(table.dual[static_cast<std::size_t>(local(beta))], index, ambient_rank);
}

QVector RelativeWeights::weighted(int beta) const {
  return embed(table.weighted[static_cast<std::size_t>(local(beta))], index, ambient_rank);
}

RelativeWeights relative_weights(const RootSystem& rs, RootSet subset) {
  rs.check_subset(subset);
  RelativeWeights rw;
  rw.ambient_rank = rs.rank();
  rw.members = subset;
  rw.index = subset.members();
  if (subset.empty()) return rw;
  std::vector<std::size_t> idx(rw.index.begin(), rw.index.end());
  QMatrix sub = rs.gramm().submatrix(idx, idx);
  rw.table.coupling = invert(sub);
  for (std::size_t a = 0; a < idx.size(); ++a) {
    QVector w = rw.table.coupling.row_vector(a);
    Rational d;
    for (const auto& x : w) d += x;
    rw.table.weighted.push_back(d.inverse() * w);
    rw.table.dual.push_back(std::move(w));
    rw.table.d.push_back(d);
  }
  return rw;
}

Subspace lower_torus(const RootSystem& rs, RootSet subset) {
  rs.check_subset(subset);
  const auto n = static_cast<std::size_t>(rs.rank());
  std::vector<QVector> roots;
  for (int b : subset.members()) roots.push_back(unit_vector(n, static_cast<std::size_t>(b)));
  return kernel(roots, n);
}

Subspace upper_torus(const RootSystem& rs, RootSet subset) {
  rs.check_subset(subset);
  std::vector<QVector> coroots;
  for (int b : subset.members()) coroots.push_back(rs.coroot(b));
  return Subspace::span(static_cast<std::size_t>(rs.rank()), coroots);
}

Subspace upper_torus_orthogonal(const RootSystem& rs, RootSet subset) {
  // In dual coordinates the inner product on E* has matrix gramm^{-1}, so the
  // complement of a_I is cut out by the functionals gramm^{-1} b, b in a_I.
  const auto n = static_cast<std::size_t>(rs.rank());
  const QMatrix g_inv = invert(rs.gramm());
  std::vector<QVector> functionals;
  const Subspace lower = lower_torus(rs, subset);
  for (const auto& b : lower.basis()) functionals.push_back(g_inv * b);
  return kernel(functionals, n);
}

ParabolicDatum make_datum(const RootSystem& rs, RootSet subset) {
  ParabolicDatum p{subset, lower_torus(rs, subset), upper_torus(rs, subset), relative_weights(rs, subset)};
  if (p.a_upper != upper_torus_orthogonal(rs, subset)) {
    throw InternalError("coroot span and orthogonal complement disagree for " + to_string(subset));
  }
  return p;
}

Subspace relative_torus(const RootSystem& rs, RootSet upper, RootSet lower) {
  require_subset(lower, upper, "relative_torus");
  return intersect(upper_torus(rs, upper), lower_torus(rs, lower));
}

bool verify_inc(const RootSystem& rs, RootSet j, RootSet i) {
  require_subset(j, i, "verify_inc");
  return is_subspace_of(lower_torus(rs, i), lower_torus(rs, j));
}

bool verify_tori(const RootSystem& rs, RootSet i3, RootSet i2, RootSet i1) {
  require_subset(i3, i2, "verify_tori");
  require_subset(i2, i1, "verify_tori");
  const Subspace big = relative_torus(rs, i1, i3);
  const Subspace low = relative_torus(rs, i2, i3);
  const Subspace high = relative_torus(rs, i1, i2);
  const bool dims = static_cast<int>(big.dim()) == i1.size() - i3.size() &&
                    static_cast<int>(low.dim()) == i2.size() - i3.size() &&
                    static_cast<int>(high.dim()) == i1.size() - i2.size();
  return dims && is_direct_sum(low, high, big);
}

bool verify_trivial(const RootSystem& rs, const WeightTable& wt, int alpha) {
  rs.check_root(alpha);
  const RootSet rest = RootSet::all(rs.rank()).without(alpha);
  const QVector& w = wt.dual[static_cast<std::size_t>(alpha)];
  const Subspace others = upper_torus(rs, rest);
  for (const auto& v : others.basis())
    if (!dot(w, v).is_zero()) return false;
  // Same statement through the defining relations (w_alpha, beta) = 0.
  for (int b : rest.members()) {
    if (!rs.inner(w, unit_vector(static_cast<std::size_t>(rs.rank()), static_cast<std::size_t>(b))).is_zero()) {
      return false;
    }
  }
  return true;
}

bool verify_discon(const RootSystem& rs, int alpha, RootSet i, RootSet j) {
  rs.check_root(alpha);
  rs.check_subset(i);
  rs.check_subset(j);
  if (i.contains(alpha)) throw PreconditionViolated("alpha must not lie in I");
  const RootSet all = RootSet::all(rs.rank());
  if (connected_to(rs, alpha, all - i.with(alpha))) {
    throw PreconditionViolated("root " + std::to_string(alpha + 1) + " is connected to the complement of I u {alpha}");
  }
  const Subspace s = relative_torus(rs, j, i.with(alpha) & j);
  const QVector root = unit_vector(static_cast<std::size_t>(rs.rank()), static_cast<std::size_t>(alpha));
  for (const auto& v : s.basis())
    if (!dot(root, v).is_zero()) return false;
  return true;
}

bool verify_para_shadow(const RootSystem& rs, RootSet i, RootSet j, RootSet i_prime, RootSet j_prime) {
  require_subset(j, i, "verify_para_shadow");
  require_subset(j_prime, i_prime, "verify_para_shadow");
  require_subset(i, i_prime, "verify_para_shadow");
  require_subset(j, j_prime, "verify_para_shadow");
  const Subspace small = relative_torus(rs, i, j);
  const Subspace big = relative_torus(rs, i_prime, j);
  return is_subspace_of(small, big) && is_direct_sum(small, relative_torus(rs, i_prime, i), big) &&
         is_direct_sum(relative_torus(rs, j_prime, j), relative_torus(rs, i_prime, j_prime), big);
}

}  // namespace dw
