#include <gtest/gtest.h>

#include "dualweight/divergence.hpp"
#include "dualweight/errors.hpp"
#include "dualweight/suites.hpp"
#include "oracles.hpp"

using dw::QMatrix;
using dw::QVector;
using dw::Rational;
using dw::RootSet;
using dw::RootSystem;

namespace {

// Weighted dual weight of `beta` relative to `subset`, in ambient
// simple-root coordinates, from the adjugate of the sub-Gramm block.
QVector relative_wbar_oracle(const RootSystem& rs, RootSet subset, int beta) {
  const auto idx = subset.members();
  const std::size_t k = idx.size();
  QMatrix block(k, k);
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q) block(p, q) = rs.gramm()(idx[p], idx[q]);
  const QMatrix inv = oracle::adjugate_inverse(block);
  const std::size_t b = std::find(idx.begin(), idx.end(), beta) - idx.begin();
  Rational d;
  for (std::size_t q = 0; q < k; ++q) d += inv(b, q);
  QVector out(rs.rank());
  for (std::size_t q = 0; q < k; ++q) out[idx[q]] = inv(b, q) / d;
  return out;
}

// a lies in upper(I) ^ lower(J): killed by the roots of J and orthogonal,
// under the inverse Gramm form on E*, to every covector killing the coroots of I.
bool in_relative_torus_oracle(const RootSystem& rs, RootSet upper, RootSet lower, const QVector& a) {
  for (int b : lower.members())
    if (!a[b].is_zero()) return false;
  // a in span of coroots of I iff the Gramm-weighted vector G^-1-dual lies in span(I):
  // coroot b = 2 G e_b / G_bb in dual coordinates, so G^-1 a must be supported on I.
  const QVector x = oracle::adjugate_inverse(rs.gramm()) * a;
  for (int i = 0; i < rs.rank(); ++i)
    if (!upper.contains(i) && !x[i].is_zero()) return false;
  return true;
}

// Independent admissibility check of theta at time n.
bool admissible_oracle(const dw::SimTrace& t, long n) {
  const auto& p = *t.plan;
  for (int l = 1; l <= p.length(); ++l) {
    const QVector th = t.theta(l, n);
    const RootSet il = p.subsets[l - 1];
    const Rational top = dw::dot(relative_wbar_oracle(p.rs, il, p.selection[l - 1]), th);
    if (top < 0) return false;
    for (int k = l + 1; k <= p.length(); ++k)
      if (dw::dot(relative_wbar_oracle(p.rs, il, p.selection[k - 1]), th) > top) return false;
  }
  return true;
}

}  // namespace

TEST(Plan, Errors) {
  const auto rs = RootSystem::build("A2");
  EXPECT_THROW(dw::make_plan(rs, {}), dw::PreconditionViolated);
  EXPECT_THROW(dw::make_plan(rs, {0, 0}), dw::PreconditionViolated);
  EXPECT_THROW(dw::make_plan(rs, {3}), dw::UnknownRoot);
  EXPECT_THROW(dw::generate_trace(rs, {0}, -1, 1), dw::PreconditionViolated);
}

TEST(Plan, A2Directions) {
  const auto p = dw::make_plan(RootSystem::build("A2"), {0, 1});
  ASSERT_EQ(p->direction.size(), 2u);
  EXPECT_EQ(p->direction[0], (QVector{1, 0}));
  EXPECT_EQ(p->direction[1], (QVector{-1, 2}));
  EXPECT_EQ(p->subsets, (std::vector<RootSet>{RootSet::all(2), RootSet::of({1}), RootSet()}));
}

// The hand trace: a1 = (2n, 0), a2 = (n/2) coroot of alpha_2 = (-n/2, n).
TEST(Divergence, A2HandTrace) {
  const auto p = dw::make_plan(RootSystem::build("A2"), {0, 1});
  for (long n = 1; n <= 30; ++n) {
    const QVector a1{2 * n, 0};
    const QVector a2{Rational(-n, 2), n};
    const QVector th = a1 + a2;
    EXPECT_EQ(th, (QVector{Rational(3 * n, 2), n}));
    const QVector w1 = relative_wbar_oracle(p->rs, RootSet::all(2), 0);
    const QVector w2 = relative_wbar_oracle(p->rs, RootSet::all(2), 1);
    EXPECT_GE(dw::dot(w1, th), dw::dot(w2, th));
    // Connected branch of the induction: alpha_1(theta) >= wbar_1(theta) = 4n/3.
    EXPECT_EQ(dw::dot(w1, th), Rational(4 * n, 3));
    EXPECT_GE(th[0], dw::dot(w1, th));
  }
}

TEST(Divergence, NaiveA2TraceIsInadmissible) {
  const auto rs = RootSystem::build("A2");
  for (long n = 1; n <= 50; ++n) {
    const auto c = dw::naive_a2_components(n);
    const QVector th = c[0] + c[1];
    const Rational w1 = dw::dot(relative_wbar_oracle(rs, RootSet::all(2), 0), th);
    const Rational w2 = dw::dot(relative_wbar_oracle(rs, RootSet::all(2), 1), th);
    EXPECT_EQ(w1, Rational(2 * n, 3));
    EXPECT_EQ(w2, Rational(5 * n, 6));
    EXPECT_LT(w1, w2);
  }
}

TEST(Divergence, SeededA2Example) {
  const auto t = dw::generate_trace(RootSystem::build("A2"), {0, 1}, 100, 7);
  const auto rep = dw::assert_divergence(t);
  ASSERT_EQ(rep.roots.size(), 2u);
  for (const auto& r : rep.roots) {
    EXPECT_GT(r.slope, 0);
    EXPECT_GT(r.fitted_lower_slope, 0);
  }
}

TEST(Divergence, ZeroHorizonIsEmpty) {
  const auto t = dw::generate_trace(RootSystem::build("B2"), {1, 0}, 0, 3);
  EXPECT_TRUE(dw::assert_divergence(t).empty());
}

TEST(Divergence, SingleStepIsGrowthOnly) {
  const auto t = dw::generate_trace(RootSystem::build("G2"), {1}, 20, 5);
  EXPECT_EQ(t.plan->constraints.size(), 2u);  // s_1 >= 0 and wbar >= 0
  const auto rep = dw::assert_divergence(t);
  ASSERT_EQ(rep.roots.size(), 1u);
  EXPECT_GT(rep.roots[0].slope, 0);
  EXPECT_TRUE(dw::replay_induction(t, 0).vacuous());
}

TEST(Divergence, TamperedTraceFails) {
  const auto p = dw::make_plan(RootSystem::build("A2"), {0, 1});
  // Zero growth on every ray is refused up front.
  std::vector<dw::RayWeight> w;
  for (std::size_t i = 0; i < p->rays.size(); ++i) w.push_back({i, 0, 1});
  EXPECT_THROW(dw::trace_from_weights(p, 10, 0, w), dw::PreconditionViolated);
  // A valid trace with its last component frozen no longer diverges.
  auto t = dw::generate_trace(p, 10, 1);
  t.steps.back().slope = QVector(2);
  EXPECT_THROW(dw::assert_divergence(t), dw::DivergenceFailure);
}

TEST(Induction, A2ConnectedBranch) {
  const auto t = dw::generate_trace(RootSystem::build("A2"), {0, 1}, 40, 9);
  const auto rep = dw::replay_induction(t, 0);
  EXPECT_EQ(rep.branch, "connected");
  EXPECT_EQ(rep.level, 1);
  EXPECT_EQ(rep.root, 0);
  EXPECT_GT(rep.checked, 0);
  EXPECT_TRUE(dw::replay_induction(t, 1).vacuous());
  EXPECT_TRUE(dw::replay_induction(t, -1).vacuous());
}

TEST(Induction, CrossingComponentsIsDisconnected) {
  const auto t = dw::generate_trace(RootSystem::build("A2xA1"), {2, 0}, 30, 4);
  const auto rep = dw::replay_induction(t, 0);
  EXPECT_EQ(rep.branch, "disconnected");
  const auto d = dw::assert_divergence(t);
  // alpha_3 sees only its own component.
  for (long n = t.n0; n <= 30; ++n) EXPECT_EQ(t.theta(1, n)[2], t.steps[0].component(n)[2]);
  EXPECT_EQ(d.roots.size(), 2u);
}

TEST(Trace, DeterministicInSeed) {
  const auto rs = RootSystem::build("B3");
  const auto a = dw::generate_trace(rs, {2, 0, 1}, 25, 77);
  const auto b = dw::generate_trace(rs, {2, 0, 1}, 25, 77);
  ASSERT_EQ(a.weights.size(), b.weights.size());
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    EXPECT_EQ(a.weights[i].lambda, b.weights[i].lambda);
    EXPECT_EQ(a.weights[i].mu, b.weights[i].mu);
  }
  EXPECT_EQ(a.n0, b.n0);
  EXPECT_NE(dw::derive_seed(1, 0), dw::derive_seed(1, 1));
  EXPECT_NE(dw::derive_seed(1, 0), dw::derive_seed(2, 0));
}

// Generated traces checked from outside: components sit in the exact
// relative tori, the constraints hold from n0 on by the oracle, n0 is the
// first such index, and every selected root grows on theta^(1).
TEST(DivergenceProperty, GeneratedTracesAgainstOracle) {
  for (const char* name : {"A2", "B2", "G2", "A3", "B3", "A2xA1", "C3"}) {
    const auto rs = RootSystem::build(name);
    for (const auto& sel : dw::all_selections(rs.rank(), rs.rank())) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const auto t = dw::generate_trace(rs, sel, 12, dw::derive_seed(seed, sel.size()));
        const auto& p = *t.plan;
        for (long n = 1; n <= 12; ++n) {
          for (int l = 1; l <= p.length(); ++l) {
            const QVector a = t.steps[l - 1].component(n);
            EXPECT_TRUE(in_relative_torus_oracle(rs, p.subsets[l - 1], p.subsets[l], a)) << name;
          }
          if (n >= t.n0) {
            EXPECT_TRUE(admissible_oracle(t, n)) << name << " n=" << n;
            EXPECT_TRUE(dw::constraints_hold(t, n));
          }
        }
        if (t.n0 > 1) EXPECT_FALSE(dw::constraints_hold(t, t.n0 - 1)) << name;
        const auto rep = dw::assert_divergence(t);
        for (const auto& r : rep.roots) {
          EXPECT_GT(t.theta(1, 12)[r.root], t.theta(1, t.n0)[r.root]);
          EXPECT_GT(r.slope, 0);
        }
        for (int d = 0; d < p.length(); ++d) EXPECT_NO_THROW(dw::replay_induction(t, d));
      }
    }
  }
}

// Base case: the last selected root only sees the last component.
TEST(DivergenceProperty, BaseCase) {
  for (const char* name : {"A3", "B3", "A2xA1"}) {
    const auto rs = RootSystem::build(name);
    for (const auto& sel : dw::all_selections(rs.rank(), rs.rank())) {
      const auto t = dw::generate_trace(rs, sel, 8, 3);
      const int last = sel.back();
      for (long n = 1; n <= 8; ++n) EXPECT_EQ(t.theta(1, n)[last], t.steps.back().component(n)[last]);
    }
  }
}

// Kernel bookkeeping: earlier components vanish on later-selected roots.
TEST(DivergenceProperty, EarlierComponentsKillLaterRoots) {
  const auto rs = RootSystem::build("A4");
  for (const auto& sel : dw::all_selections(4, 3)) {
    const auto t = dw::generate_trace(rs, sel, 5, 11);
    for (std::size_t m = 0; m < sel.size(); ++m)
      for (std::size_t k = m + 1; k < sel.size(); ++k)
        EXPECT_TRUE(t.steps[m].component(3)[sel[k]].is_zero());
  }
}
