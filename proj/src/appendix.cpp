#include "dualweight/appendix.hpp"

#include <algorithm>

#include "dualweight/errors.hpp"

namespace dw {

namespace {

std::string label(int i) { return std::to_string(i + 1); }

QVector root_vector(const RootSystem& rs, int b) {
  return unit_vector(static_cast<std::size_t>(rs.rank()), static_cast<std::size_t>(b));
}

bool induced_connected(const RootSystem& rs, RootSet s) {
  const auto members = s.members();
  if (members.empty()) return false;
  RootSet reached = RootSet::of({members.front()});
  std::vector<int> stack{members.front()};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : members) {
      if (reached.contains(u)) continue;
      if (!rs.gramm()(static_cast<std::size_t>(v), static_cast<std::size_t>(u)).is_zero()) {
        reached = reached.with(u);
        stack.push_back(u);
      }
    }
  }
  return reached == s;
}

}  // namespace

CoefficientExpansion expand_coefficients(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset) {
  rs.check_root(alpha);
  rs.check_subset(subset);
  const auto n = static_cast<std::size_t>(rs.rank());
  // Order the simple roots as (I, complement) so the mixed basis is
  // (roots of I, dual weights of the complement).
  std::vector<std::size_t> order;
  for (int b : subset.members()) order.push_back(static_cast<std::size_t>(b));
  const std::size_t m = order.size();
  for (int g : (RootSet::all(rs.rank()) - subset).members()) order.push_back(static_cast<std::size_t>(g));
  std::vector<std::size_t> head(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<std::size_t> tail(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());

  const QMatrix a = rs.gramm().submatrix(order, order);
  const QMatrix d = block_coefficient_matrix(a, rs.gramm().submatrix(head, head), rs.gramm().submatrix(head, tail));
  const std::size_t p = static_cast<std::size_t>(std::find(order.begin(), order.end(), alpha) - order.begin());

  CoefficientExpansion e{alpha, subset, QVector(n)};
  for (std::size_t j = 0; j < n; ++j) e.c[order[j]] = d(p, j);

  // Independent route: solve M c = alpha with the mixed basis as columns.
  QMatrix basis(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto delta = static_cast<int>(j);
    const QVector v = subset.contains(delta) ? root_vector(rs, delta) : wt.dual[j];
    for (std::size_t i = 0; i < n; ++i) basis(i, j) = v[i];
  }
  const QVector target = root_vector(rs, alpha);
  if (solve(basis, target) != e.c) {
    throw CertificateFailure("block formula and direct solve disagree for alpha " + label(alpha) + ", I " +
                             to_string(subset));
  }
  if (basis * e.c != target) throw CertificateFailure("expansion does not reproduce alpha " + label(alpha));
  for (std::size_t j = 0; j < n; ++j) {
    if (static_cast<int>(j) != alpha && e.c[j].sign() > 0) {
      throw CertificateFailure("positive coefficient " + e.c[j].to_string() + " at " + label(static_cast<int>(j)) +
                               " for alpha " + label(alpha) + ", I " + to_string(subset));
    }
  }
  return e;
}

ConeSpec root_inequality_cone(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset, Hypothesis h,
                              int dropped) {
  rs.check_root(alpha);
  rs.check_subset(subset);
  if (subset.contains(alpha)) throw PreconditionViolated("alpha must not lie in I");
  const auto a = static_cast<std::size_t>(alpha);
  ConeSpec cone;
  cone.ambient_dim = static_cast<std::size_t>(rs.rank());
  for (int b : subset.members()) cone.equalities.push_back(root_vector(rs, b));
  if (h != Hypothesis::drop_ordering) {
    for (int g : (RootSet::all(rs.rank()) - subset).members()) {
      if (g == alpha) continue;
      if (h == Hypothesis::drop_one_ordering && g == dropped) continue;
      cone.inequalities.push_back(wt.weighted[a] - wt.weighted[static_cast<std::size_t>(g)]);
      cone.labels.push_back("wbar" + label(alpha) + ">=wbar" + label(g));
    }
  }
  if (h != Hypothesis::drop_nonnegative) {
    cone.inequalities.push_back(wt.weighted[a]);
    cone.labels.push_back("wbar" + label(alpha) + ">=0");
  }
  cone.objective = root_vector(rs, alpha) - wt.weighted[a];
  return cone;
}

Certificate verify_root_inequality_constructive(const RootSystem& rs, const WeightTable& wt, int alpha,
                                                RootSet subset) {
  const ConeSpec cone = root_inequality_cone(rs, wt, alpha, subset);
  const CoefficientExpansion e = expand_coefficients(rs, wt, alpha, subset);
  Certificate cert;
  cert.route = "constructive";
  // alpha - wbar_a = sum_{g != a} (-c_g d_g)(wbar_a - wbar_g)
  //                + (sum_g c_g d_g - 1) wbar_a + sum_{b in I} c_b b.
  Rational total;
  for (int g : (RootSet::all(rs.rank()) - subset).members()) {
    const auto gi = static_cast<std::size_t>(g);
    total += e.c[gi] * wt.d[gi];
    if (g != alpha) cert.multipliers.push_back(-(e.c[gi] * wt.d[gi]));
  }
  cert.multipliers.push_back(total - 1);
  for (int b : subset.members()) cert.equality_multipliers.push_back(e.c[static_cast<std::size_t>(b)]);

  for (std::size_t i = 0; i < cert.multipliers.size(); ++i) {
    if (cert.multipliers[i].sign() < 0) {
      throw CertificateFailure("negative multiplier " + cert.multipliers[i].to_string() + " on " + cone.labels[i]);
    }
  }
  QVector combo(cone.ambient_dim);
  for (std::size_t i = 0; i < cone.inequalities.size(); ++i) combo = combo + cert.multipliers[i] * cone.inequalities[i];
  for (std::size_t j = 0; j < cone.equalities.size(); ++j)
    combo = combo + cert.equality_multipliers[j] * cone.equalities[j];
  if (combo != cone.objective) {
    throw CertificateFailure("re-expansion " + to_string(combo) + " differs from objective " +
                             to_string(cone.objective));
  }
  return cert;
}

Certificate verify_root_inequality_rays(const ConeSpec& cone) {
  const ConeGenerators gen = extreme_rays(cone.equalities, cone.inequalities, cone.ambient_dim);
  Certificate cert;
  cert.route = "rays";
  cert.lineality_dim = gen.lineality.size();
  cert.extreme_rays = gen.rays;
  for (const auto& l : gen.lineality) {
    const Rational v = dot(cone.objective, l);
    if (!v.is_zero()) {
      // Both l and -l lie in the cone; pick the direction with negative objective.
      cert.kind = Certificate::Kind::violating_ray;
      cert.ray = v.sign() < 0 ? l : Rational(-1) * l;
      cert.ray_objective = -v.abs();
      return cert;
    }
  }
  for (const auto& r : gen.rays) {
    const Rational v = dot(cone.objective, r);
    cert.ray_objectives.push_back(v);
    if (v.sign() < 0 && cert.kind != Certificate::Kind::violating_ray) {
      cert.kind = Certificate::Kind::violating_ray;
      cert.ray = r;
      cert.ray_objective = v;
    }
  }
  return cert;
}

bool verify_divergence_bound(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset,
                             const std::vector<QVector>& trace) {
  rs.check_root(alpha);
  rs.check_subset(subset);
  if (subset.contains(alpha)) throw PreconditionViolated("alpha must not lie in I");
  const RootSet rest = RootSet::all(rs.rank()) - subset;
  const RootSet others = rest.without(alpha);
  if (!connected_to(rs, alpha, others)) {
    throw PreconditionViolated("root " + label(alpha) + " is not connected to the complement of I u {alpha}");
  }
  const auto a = static_cast<std::size_t>(alpha);
  const Rational& d = wt.d[a];
  const Rational self = wt.coupling(a, a);
  if (!(self < d)) return false;
  const Rational lhs_factor = Rational(1) - self / d;
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const QVector& x = trace[n];
    if (x.size() != static_cast<std::size_t>(rs.rank())) throw DimensionMismatch("trace vector length");
    for (int b : subset.members())
      if (!x[static_cast<std::size_t>(b)].is_zero())
        throw PreconditionViolated("a_" + std::to_string(n) + " is not in the common kernel of I");
    const Rational wa = dot(wt.weighted[a], x);
    if (wa.sign() < 0) throw PreconditionViolated("wbar_alpha(a_" + std::to_string(n) + ") < 0");
    for (int g : rest.members())
      if (dot(wt.weighted[static_cast<std::size_t>(g)], x) > wa)
        throw PreconditionViolated("ordering hypothesis fails at n=" + std::to_string(n));
    Rational rhs;
    for (int b : others.members()) rhs += wt.coupling(a, static_cast<std::size_t>(b)) * x[static_cast<std::size_t>(b)];
    rhs /= d;
    if (lhs_factor * x[a] < rhs) return false;
  }
  return true;
}

bool verify_inverse_gramm_positive(const RootSystem& rs) {
  if (!rs.irreducible()) throw NotIrreducible(rs.name() + " has " + std::to_string(rs.components().size()) + " components");
  const QMatrix inv = invert(rs.gramm());
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j)
      if (inv(i, j).sign() <= 0) return false;
  return true;
}

std::vector<SubdiagramClass> classify_connected_subdiagrams(const RootSystem& rs) {
  std::vector<SubdiagramClass> out;
  for (RootSet s : subsets_of(RootSet::all(rs.rank()))) {
    if (!induced_connected(rs, s)) continue;
    std::vector<std::size_t> idx;
    for (int i : s.members()) idx.push_back(static_cast<std::size_t>(i));
    const QMatrix sub = rs.gramm().submatrix(idx, idx);
    SubdiagramClass sc;
    sc.roots = s;
    sc.positive_definite = positive_definite(sub);
    if (const auto cls = classify_connected(sub)) {
      sc.classified = true;
      sc.type = cls->type;
    }
    out.push_back(sc);
  }
  return out;
}

bool verify_subdiagrams_classified(const RootSystem& rs) {
  for (const auto& sc : classify_connected_subdiagrams(rs))
    if (!sc.positive_definite || !sc.classified) return false;
  return true;
}

}  // namespace dw
