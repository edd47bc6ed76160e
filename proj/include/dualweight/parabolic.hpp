#pragma once

#include <vector>

#include "dualweight/root_system.hpp"
#include "dualweight/subspace.hpp"

namespace dw {

/// Dual weights of the sub-root-system spanned by a subset I, embedded back
/// into the ambient simple-root coordinates (zero outside I).
struct RelativeWeights {
  int ambient_rank = 0;
  RootSet members;
  /// members.members(), i.e. local index -> ambient index.
  std::vector<int> index;
  /// Weight table of the I x I sub-Gramm, in local coordinates.
  WeightTable table;

  int local(int beta) const;
  QVector dual(int beta) const;
  QVector weighted(int beta) const;
};

RelativeWeights relative_weights(const RootSystem& rs, RootSet subset);

/// Torus shadow of a standard parabolic subset I. Subspaces live in E*.
struct ParabolicDatum {
  RootSet subset;
  /// Common kernel of the roots in I.
  Subspace a_lower;
  /// Span of the coroots of I; the orthogonal complement of a_lower.
  Subspace a_upper;
  RelativeWeights relative;
};

Subspace lower_torus(const RootSystem& rs, RootSet subset);
/// Span of the coroots of `subset`.
Subspace upper_torus(const RootSystem& rs, RootSet subset);
/// Orthogonal complement of lower_torus under the inner product induced on E*.
Subspace upper_torus_orthogonal(const RootSystem& rs, RootSet subset);

/// Builds the datum and cross-checks the two constructions of a_upper
/// (throws InternalError on disagreement).
ParabolicDatum make_datum(const RootSystem& rs, RootSet subset);

/// upper(I) intersected with lower(J), for J inside I. Throws SubsetViolation.
Subspace relative_torus(const RootSystem& rs, RootSet upper, RootSet lower);

/// lower(I) is contained in lower(J) for J inside I.
bool verify_inc(const RootSystem& rs, RootSet j, RootSet i);

/// relative(I1, I3) is the direct sum of relative(I2, I3) and relative(I1, I2)
/// and the dimensions add up, for I3 inside I2 inside I1.
bool verify_tori(const RootSystem& rs, RootSet i3, RootSet i2, RootSet i1);

/// w_alpha vanishes on the span of the coroots of the other simple roots.
bool verify_trivial(const RootSystem& rs, const WeightTable& wt, int alpha);

/// For alpha not connected to the complement of I u {alpha}: the relative
/// torus upper(J) ^ lower((I u {alpha}) ^ J) lies in ker alpha.
/// Throws PreconditionViolated when alpha is connected.
bool verify_discon(const RootSystem& rs, int alpha, RootSet i, RootSet j);

/// Subspace form of the inclusion used for nested parabolics
/// (J in I, J' in I', I in I', J in J'):
/// relative(I, J) is inside relative(I', J), and
/// relative(I', J) = relative(I, J) + relative(I', I) = relative(J', J) + relative(I', J'),
/// both sums direct.
bool verify_para_shadow(const RootSystem& rs, RootSet i, RootSet j, RootSet i_prime, RootSet j_prime);

}  // namespace dw
