#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dualweight/matrix.hpp"

namespace dw {

/// Linear subspace of Q^n held by its reduced row echelon basis.
///
/// The echelon basis is canonical, so two Subspace values compare equal
/// exactly when they describe the same subspace.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : dim_(ambient_dim) {}

  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(std::size_t ambient_dim, const std::vector<QVector>& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t dim() const { return basis_.size(); }
  bool trivial() const { return basis_.empty(); }
  const std::vector<QVector>& basis() const { return basis_; }

  /// Functionals (under the standard pairing) vanishing on this subspace,
  /// as a canonical basis of the annihilator.
  std::vector<QVector> annihilator() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t dim_;
  std::vector<QVector> basis_;
};

/// Common zero set of `functionals` in Q^ambient_dim.
Subspace kernel(const std::vector<QVector>& functionals, std::size_t ambient_dim);
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool contains(const Subspace& s, const QVector& v);
/// a is a subspace of b.
bool is_subspace_of(const Subspace& a, const Subspace& b);
/// a + b = target with a and b intersecting trivially.
bool is_direct_sum(const Subspace& a, const Subspace& b, const Subspace& target);

/// The components of v in a and in b, assuming v lies in their direct sum. Throws PreconditionViolated otherwise.
std::pair<QVector, QVector> split_direct_sum(const Subspace& a, const Subspace& b, const QVector& v);

/// Matrix of the projection of a + b onto b along a. Only meaningful on
/// vectors of a + b. Throws PreconditionViolated if a and b intersect.
QMatrix projection_along(const Subspace& a, const Subspace& b);

}  // namespace dw
