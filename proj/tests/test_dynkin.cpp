#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "dualweight/dynkin.hpp"
#include "dualweight/errors.hpp"

using dw::ComponentSpec;
using dw::QMatrix;

TEST(Dynkin, ParsesProducts) {
  EXPECT_EQ(dw::parse_system_spec("B2xA1"), (dw::SystemSpec{{'B', 2}, {'A', 1}}));
  EXPECT_EQ(dw::parse_system_spec("G2+A2"), (dw::SystemSpec{{'G', 2}, {'A', 2}}));
  EXPECT_EQ(dw::to_string(dw::parse_system_spec("E8")), "E8");
}

TEST(Dynkin, ParseErrorCarriesPosition) {
  try {
    dw::parse_system_spec("A2xQ3");
    FAIL();
  } catch (const dw::ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(dw::parse_system_spec(""), dw::ParseError);
  EXPECT_THROW(dw::parse_system_spec("A"), dw::ParseError);
  EXPECT_THROW(dw::parse_system_spec("A2x"), dw::ParseError);
}

TEST(Dynkin, RankLimits) {
  for (const auto& bad : {ComponentSpec{'A', 0}, {'B', 1}, {'C', 1}, {'D', 2}, {'E', 5}, {'E', 9}, {'F', 3}, {'G', 3}})
    EXPECT_THROW(dw::validate(bad), dw::InvalidRank) << dw::to_string(bad);
  for (const auto& ok : {ComponentSpec{'A', 1}, {'B', 2}, {'C', 2}, {'D', 3}, {'E', 6}, {'F', 4}, {'G', 2}})
    EXPECT_NO_THROW(dw::validate(ok));
}

TEST(Dynkin, G2Gramm) {
  EXPECT_EQ(dw::bourbaki_gramm({'G', 2}), (QMatrix{{2, -3}, {-3, 6}}));
  EXPECT_EQ(dw::cartan_matrix(dw::bourbaki_gramm({'G', 2})), (std::vector<std::vector<int>>{{2, -1}, {-3, 2}}));
}

TEST(Dynkin, CatalogueSizes) {
  // A, B, and from rank 3 C; D from 4; E at 6..8; F at 4; G at 2.
  const std::vector<std::size_t> want{1, 3, 3, 5, 4, 5, 5, 5};
  for (int r = 1; r <= 8; ++r) EXPECT_EQ(dw::catalogue(r).size(), want[r - 1]) << r;
}

TEST(Dynkin, GraphComponents) {
  const QMatrix g{{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}};
  EXPECT_EQ(dw::graph_components(g), (std::vector<std::vector<std::size_t>>{{0, 2}, {1}}));
}

TEST(Dynkin, F4DoubleBondIsB2) {
  const QMatrix f4 = dw::bourbaki_gramm({'F', 4});
  const std::size_t idx[] = {1, 2};
  const auto c = dw::classify_connected(f4.submatrix(idx, idx));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->type, (ComponentSpec{'B', 2}));
}

TEST(Dynkin, RejectsNonFiniteType) {
  // Affine A2: a triangle.
  EXPECT_FALSE(dw::classify_connected(QMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}).has_value());
}

// Every catalogue Gramm, reindexed by a random permutation and rescaled,
// classifies back to its own type and the relabelling reproduces it.
TEST(DynkinProperty, ClassificationInvariantUnderRelabelling) {
  std::mt19937_64 gen(41);
  for (int r = 1; r <= 8; ++r) {
    for (const auto& spec : dw::catalogue(r)) {
      const QMatrix g = dw::bourbaki_gramm(spec);
      std::vector<std::size_t> perm(r);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), gen);
      const dw::Rational s(1 + static_cast<long>(gen() % 7), 1 + static_cast<long>(gen() % 5));
      QMatrix h(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) h(i, j) = s * g(perm[i], perm[j]);
      const auto c = dw::classify_connected(h);
      ASSERT_TRUE(c.has_value()) << dw::to_string(spec);
      EXPECT_EQ(c->type, spec);
      EXPECT_EQ(c->scale, s);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) EXPECT_EQ(h(c->relabel[i], c->relabel[j]), s * g(i, j));
    }
  }
}
