#include <gtest/gtest.h>

#include <random>

#include "dualweight/errors.hpp"
#include "dualweight/root_system.hpp"
#include "dualweight/subspace.hpp"
#include "oracles.hpp"

using dw::QVector;
using dw::Rational;
using dw::Subspace;

TEST(Subspace, KernelOfTwoFunctionalsInRankThree) {
  const Subspace k = dw::kernel({{1, 0, 0}, {0, 1, 0}}, 3);
  EXPECT_EQ(k.dim(), 1u);
  EXPECT_TRUE(dw::contains(k, {0, 0, 5}));
}

TEST(Subspace, IntersectIsIdempotent) {
  const Subspace s = Subspace::span(4, {{1, 2, 0, 0}, {0, 1, 1, 1}});
  EXPECT_EQ(dw::intersect(s, s), s);
}

TEST(Subspace, TwoRootKernelsSpanA2Dual) {
  // In E* of A2 the roots are the coordinate functionals.
  const Subspace a = dw::kernel({{1, 0}}, 2);
  const Subspace b = dw::kernel({{0, 1}}, 2);
  EXPECT_EQ(dw::sum(a, b), Subspace::full(2));
  EXPECT_TRUE(dw::is_direct_sum(a, b, Subspace::full(2)));
}

TEST(Subspace, DimensionMismatch) {
  EXPECT_THROW(dw::intersect(Subspace::full(2), Subspace::full(3)), dw::DimensionMismatch);
  EXPECT_THROW(dw::contains(Subspace::full(2), {1, 2, 3}), dw::DimensionMismatch);
}

TEST(Subspace, SplitOutsideSumThrows) {
  const Subspace a = Subspace::span(3, {{1, 0, 0}});
  const Subspace b = Subspace::span(3, {{0, 1, 0}});
  EXPECT_THROW(dw::split_direct_sum(a, b, {0, 0, 1}), dw::PreconditionViolated);
  EXPECT_THROW(dw::projection_along(a, a), dw::PreconditionViolated);
}

TEST(Subspace, AnnihilatorVanishes) {
  const Subspace s = Subspace::span(4, {{1, 1, 0, 0}, {0, 0, 1, -1}});
  const auto ann = s.annihilator();
  EXPECT_EQ(ann.size(), 2u);
  for (const auto& f : ann)
    for (const auto& v : s.basis()) EXPECT_TRUE(dw::dot(f, v).is_zero());
}

namespace {

Subspace random_subspace(std::mt19937_64& gen, std::size_t n) {
  std::vector<QVector> vs;
  const std::size_t k = gen() % (n + 1);
  for (std::size_t i = 0; i < k; ++i) vs.push_back(oracle::random_vector(gen, n, 3));
  return Subspace::span(n, vs);
}

}  // namespace

// Spans of the same vectors in another order or rescaled give the identical basis.
TEST(SubspaceProperty, CanonicalBasis) {
  std::mt19937_64 gen(21);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + gen() % 5;
    std::vector<QVector> vs;
    for (std::size_t i = 0; i < 1 + gen() % 4; ++i) vs.push_back(oracle::random_vector(gen, n, 3));
    std::vector<QVector> ws;
    for (auto it2 = vs.rbegin(); it2 != vs.rend(); ++it2) ws.push_back(Rational(-7, 3) * *it2);
    ws.push_back(vs.front() + vs.back());
    const Subspace a = Subspace::span(n, vs), b = Subspace::span(n, ws);
    EXPECT_EQ(a.basis(), b.basis());
    EXPECT_EQ(a.dim(), oracle::naive_rank(dw::QMatrix::from_rows(vs, n)));
  }
}

TEST(SubspaceProperty, DimensionFormula) {
  std::mt19937_64 gen(22);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + gen() % 5;
    const Subspace a = random_subspace(gen, n), b = random_subspace(gen, n);
    EXPECT_EQ(dw::sum(a, b).dim() + dw::intersect(a, b).dim(), a.dim() + b.dim());
    EXPECT_TRUE(dw::is_subspace_of(dw::intersect(a, b), a));
    EXPECT_TRUE(dw::is_subspace_of(a, dw::sum(a, b)));
    EXPECT_EQ(dw::kernel(a.annihilator(), n), a);
  }
}

// is_direct_sum implies a unique split, recovered by solving against the
// concatenated bases.
TEST(SubspaceProperty, DirectSumDecomposesUniquely) {
  std::mt19937_64 gen(23);
  int hits = 0;
  for (int it = 0; it < 400; ++it) {
    const std::size_t n = 2 + gen() % 4;
    const Subspace a = random_subspace(gen, n), b = random_subspace(gen, n);
    const Subspace t = dw::sum(a, b);
    if (!dw::is_direct_sum(a, b, t)) {
      EXPECT_FALSE(dw::intersect(a, b).trivial());
      continue;
    }
    ++hits;
    QVector v(n);
    for (const auto& x : t.basis()) v = v + oracle::random_rational(gen) * x;
    const auto [pa, pb] = dw::split_direct_sum(a, b, v);
    EXPECT_TRUE(dw::contains(a, pa));
    EXPECT_TRUE(dw::contains(b, pb));
    EXPECT_EQ(pa + pb, v);
    EXPECT_EQ(dw::projection_along(a, b) * v, pb);
  }
  EXPECT_GT(hits, 100);
}
