#pragma once

#include <cstddef>
#include <vector>

#include "dualweight/matrix.hpp"

namespace dw {

/// Generators of the polyhedral cone {x : E x = 0, A x >= 0}: the cone is
/// the lineality space plus the conic hull of `rays`.
struct ConeGenerators {
  std::size_t ambient_dim = 0;
  /// Extreme rays of the pointed part, as primitive integer vectors.
  std::vector<QVector> rays;
  /// Basis of the lineality space {x : E x = 0, A x = 0}.
  std::vector<QVector> lineality;
};

/// Double description in exact arithmetic. The equalities are eliminated
/// first by parametrizing their common kernel, the lineality space is split
/// off, and the pointed remainder is built one inequality at a time with the
/// combinatorial adjacency test.
ConeGenerators extreme_rays(const std::vector<QVector>& equalities, const std::vector<QVector>& inequalities,
                            std::size_t ambient_dim);

/// Extreme rays of the pointed cone {y : a y >= 0}; `a` must have full column rank.
std::vector<QVector> pointed_cone_rays(const QMatrix& a);

}  // namespace dw
