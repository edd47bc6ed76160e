#include <gtest/gtest.h>

#include <algorithm>

#include "dualweight/appendix.hpp"
#include "dualweight/errors.hpp"
#include "oracles.hpp"

using dw::QMatrix;
using dw::QVector;
using dw::Rational;
using dw::RootSet;
using dw::RootSystem;

namespace {

// Coefficients of alpha over the mixed basis (b in I, w_g for g outside I),
// by inverting the basis matrix with the adjugate.
QVector mixed_basis_oracle(const RootSystem& rs, int alpha, RootSet subset) {
  const int n = rs.rank();
  const QMatrix inv = oracle::adjugate_inverse(rs.gramm());
  QMatrix basis(n, n);  // column k = k-th basis vector in simple-root coordinates
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) basis(i, k) = subset.contains(k) ? Rational(i == k ? 1 : 0) : inv(k, i);
  return oracle::adjugate_inverse(basis) * dw::unit_vector(n, alpha);
}

Rational eval(const QVector& f, const QVector& x) { return dw::dot(f, x); }

}  // namespace

TEST(Expansion, AlphaInSubset) {
  const auto rs = RootSystem::build("B3");
  const auto e = dw::expand_coefficients(rs, dw::weight_table(rs), 1, RootSet::of({1, 2}));
  EXPECT_EQ(e.c, (QVector{0, 1, 0}));
}

TEST(Expansion, EmptySubsetGivesGrammRow) {
  const auto rs = RootSystem::build("A2");
  const auto e = dw::expand_coefficients(rs, dw::weight_table(rs), 0, RootSet());
  EXPECT_EQ(e.c, (QVector{2, -1}));
}

TEST(Expansion, A3LastRootOverFirstTwo) {
  const auto rs = RootSystem::build("A3");
  const auto wt = dw::weight_table(rs);
  const RootSet i = RootSet::of({0, 1});
  const auto e = dw::expand_coefficients(rs, wt, 2, i);
  EXPECT_EQ(e.c, mixed_basis_oracle(rs, 2, i));
  EXPECT_LE(e.c[0], 0);
  EXPECT_LE(e.c[1], 0);
  EXPECT_GT(e.c[2], 0);
  EXPECT_EQ(e.c[0] + e.c[1] + e.c[2] * wt.d[2], 1);
}

TEST(Constructive, A1AndA2) {
  const auto a1 = RootSystem::build("A1");
  const auto c1 = dw::verify_root_inequality_constructive(a1, dw::weight_table(a1), 0, RootSet());
  EXPECT_EQ(c1.multipliers, (QVector{0}));
  const auto a2 = RootSystem::build("A2");
  const auto c2 = dw::verify_root_inequality_constructive(a2, dw::weight_table(a2), 0, RootSet());
  // alpha_1 - wbar_1 = 1 (wbar_1 - wbar_2) + 0 wbar_1.
  EXPECT_EQ(c2.multipliers, (QVector{1, 0}));
}

TEST(Constructive, ComplementOfAlphaLeavesOneMultiplier) {
  const auto rs = RootSystem::build("C3");
  const auto wt = dw::weight_table(rs);
  const auto c = dw::verify_root_inequality_constructive(rs, wt, 1, RootSet::of({0, 2}));
  ASSERT_EQ(c.multipliers.size(), 1u);
  EXPECT_EQ(c.equality_multipliers.size(), 2u);
  EXPECT_GE(c.multipliers[0], 0);
  EXPECT_THROW(dw::verify_root_inequality_constructive(rs, wt, 1, RootSet::of({1})), dw::PreconditionViolated);
}

TEST(Rays, A2FirstRoot) {
  const auto rs = RootSystem::build("A2");
  const auto cone = dw::root_inequality_cone(rs, dw::weight_table(rs), 0, RootSet());
  const auto cert = dw::verify_root_inequality_rays(cone);
  EXPECT_TRUE(cert.nonnegative());
  std::vector<QVector> rays = cert.extreme_rays;
  std::sort(rays.begin(), rays.end());
  EXPECT_EQ(rays, (std::vector<QVector>{{1, -2}, {1, 1}}));
  EXPECT_EQ(eval(cone.objective, {1, 1}), 0);
  EXPECT_EQ(eval(cone.objective, {1, -2}), 1);
  EXPECT_EQ(eval(cone.objective, {0, 0}), 0);
}

TEST(Rays, DroppedOrderingHasViolation) {
  const auto rs = RootSystem::build("A2");
  const auto wt = dw::weight_table(rs);
  const auto cone = dw::root_inequality_cone(rs, wt, 0, RootSet(), dw::Hypothesis::drop_ordering);
  const auto cert = dw::verify_root_inequality_rays(cone);
  EXPECT_FALSE(cert.nonnegative());
  EXPECT_LT(cert.ray_objective, 0);
  // The hand example: (0, 1) satisfies the remaining constraint, objective -1/3.
  const QVector x{0, 1};
  for (const auto& row : cone.inequalities) EXPECT_GE(eval(row, x), 0);
  EXPECT_EQ(eval(cone.objective, x), Rational(-1, 3));
  EXPECT_LT(eval(wt.weighted[0] - wt.weighted[1], x), 0);
}

TEST(DivergenceBound, A2Equality) {
  const auto rs = RootSystem::build("A2");
  const auto wt = dw::weight_table(rs);
  std::vector<QVector> trace;
  for (int n = 0; n < 20; ++n) trace.push_back({n, n});
  EXPECT_TRUE(dw::verify_divergence_bound(rs, wt, 0, RootSet(), trace));
  // Equality: (1 - 2/3) n == (1/3) n.
  EXPECT_EQ((1 - wt.coupling(0, 0) / wt.d[0]) * 7, wt.coupling(0, 1) * 7 / wt.d[0]);
  EXPECT_TRUE(dw::verify_divergence_bound(rs, wt, 0, RootSet(), std::vector<QVector>(5, QVector{0, 0})));
}

TEST(DivergenceBound, G2Slope) {
  const auto rs = RootSystem::build("G2");
  const auto wt = dw::weight_table(rs);
  std::vector<QVector> trace;
  for (int n = 1; n <= 20; ++n) trace.push_back({2 * n, n});
  EXPECT_TRUE(dw::verify_divergence_bound(rs, wt, 0, RootSet(), trace));
  // (1 - 2/3) alpha_1 >= (1/3) n: slope at least 1.
  EXPECT_EQ((1 - wt.coupling(0, 0) / wt.d[0]), Rational(1, 3));
}

TEST(DivergenceBound, Preconditions) {
  const auto rs = RootSystem::build("A2xA1");
  const auto wt = dw::weight_table(rs);
  EXPECT_THROW(dw::verify_divergence_bound(rs, wt, 2, RootSet(), {}), dw::PreconditionViolated);
  EXPECT_THROW(dw::verify_divergence_bound(rs, wt, 0, RootSet::of({1}), {{1, 1, 0}}), dw::PreconditionViolated);
}

TEST(InverseGramm, Examples) {
  EXPECT_TRUE(dw::verify_inverse_gramm_positive(RootSystem::build("B2")));
  EXPECT_TRUE(dw::verify_inverse_gramm_positive(RootSystem::build("A1")));
  EXPECT_TRUE(dw::verify_inverse_gramm_positive(RootSystem::build("E8")));
  EXPECT_THROW(dw::verify_inverse_gramm_positive(RootSystem::build("A1xA1")), dw::NotIrreducible);
}

TEST(Subdiagrams, Examples) {
  const auto a3 = dw::classify_connected_subdiagrams(RootSystem::build("A3"));
  for (const auto& s : a3)
    if (s.roots == RootSet::of({0, 1})) EXPECT_EQ(s.type, (dw::ComponentSpec{'A', 2}));
  bool seen = false;
  for (const auto& s : dw::classify_connected_subdiagrams(RootSystem::build("F4")))
    if (s.roots == RootSet::of({1, 2})) {
      seen = true;
      EXPECT_TRUE(s.classified);
      EXPECT_EQ(s.type, (dw::ComponentSpec{'B', 2}));
    }
  EXPECT_TRUE(seen);
  const auto e8 = dw::classify_connected_subdiagrams(RootSystem::build("E8"));
  for (const auto& s : e8) EXPECT_TRUE(s.positive_definite && s.classified);
}

// Expansion against the mixed-basis oracle, with its sign property, over
// every (alpha, I) in a spread of systems.
TEST(AppendixProperty, ExpansionMatchesOracle) {
  for (const char* name : {"A4", "B3", "C4", "D4", "F4", "G2xA1"}) {
    const auto rs = RootSystem::build(name);
    const auto wt = dw::weight_table(rs);
    for (int a = 0; a < rs.rank(); ++a)
      for (RootSet i : dw::subsets_of(RootSet::all(rs.rank()))) {
        const auto e = dw::expand_coefficients(rs, wt, a, i);
        EXPECT_EQ(e.c, mixed_basis_oracle(rs, a, i)) << name;
        for (int d = 0; d < rs.rank(); ++d)
          if (d != a) EXPECT_LE(e.c[d], 0);
      }
  }
}

// The two routes agree and never report a violation.
TEST(AppendixProperty, RoutesAgree) {
  for (const char* name : {"A3", "B3", "C3", "G2", "A2xA1"}) {
    const auto rs = RootSystem::build(name);
    const auto wt = dw::weight_table(rs);
    for (int a = 0; a < rs.rank(); ++a)
      for (RootSet i : dw::subsets_of(RootSet::all(rs.rank()).without(a))) {
        const auto c = dw::verify_root_inequality_constructive(rs, wt, a, i);
        const auto cone = dw::root_inequality_cone(rs, wt, a, i);
        const auto r = dw::verify_root_inequality_rays(cone);
        EXPECT_TRUE(c.nonnegative() && r.nonnegative());
        for (const auto& v : r.ray_objectives) EXPECT_GE(v, 0);
        // Rays coincide with exhaustive enumeration where the cone is pointed.
        if (r.lineality_dim == 0) {
          auto rays = r.extreme_rays;
          std::sort(rays.begin(), rays.end());
          EXPECT_EQ(rays, oracle::brute_force_rays(cone.equalities, cone.inequalities, cone.ambient_dim));
        }
      }
  }
}

// Strictness (w_a, w_a) < d_a whenever alpha is connected to the rest.
TEST(AppendixProperty, StrictSelfPairing) {
  for (const char* name : {"A5", "B4", "E6", "F4", "G2"}) {
    const auto rs = RootSystem::build(name);
    const auto wt = dw::weight_table(rs);
    for (int a = 0; a < rs.rank(); ++a) EXPECT_LT(wt.coupling(a, a), wt.d[a]);
  }
  const auto a1 = dw::weight_table(RootSystem::build("A1"));
  EXPECT_EQ(a1.coupling(0, 0), a1.d[0]);
}

// Each hypothesis matters somewhere: every control variant finds a
// violating ray on some A2/A3 configuration.
TEST(AppendixProperty, HypothesesNecessary) {
  for (auto h : {dw::Hypothesis::drop_ordering, dw::Hypothesis::drop_nonnegative, dw::Hypothesis::drop_one_ordering}) {
    bool violated = false;
    for (const char* name : {"A2", "A3"}) {
      const auto rs = RootSystem::build(name);
      const auto wt = dw::weight_table(rs);
      for (int a = 0; a < rs.rank(); ++a)
        for (RootSet i : dw::subsets_of(RootSet::all(rs.rank()).without(a)))
          for (int g = 0; g < rs.rank(); ++g) {
            const auto cert = dw::verify_root_inequality_rays(dw::root_inequality_cone(rs, wt, a, i, h, g));
            if (!cert.nonnegative()) {
              violated = true;
              // The witness really satisfies the weakened cone.
              const auto cone = dw::root_inequality_cone(rs, wt, a, i, h, g);
              for (const auto& row : cone.inequalities) EXPECT_GE(eval(row, cert.ray), 0);
              for (const auto& row : cone.equalities) EXPECT_EQ(eval(row, cert.ray), 0);
              EXPECT_EQ(eval(cone.objective, cert.ray), cert.ray_objective);
            }
          }
    }
    EXPECT_TRUE(violated) << static_cast<int>(h);
  }
}
