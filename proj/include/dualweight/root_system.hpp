#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "dualweight/dynkin.hpp"
#include "dualweight/matrix.hpp"

namespace dw {

/// Subset of the simple roots, as a bit mask over 0-based indices.
class RootSet {
 public:
  constexpr RootSet() = default;
  static constexpr RootSet from_bits(std::uint64_t bits) { return RootSet(bits); }
  static RootSet of(std::initializer_list<int> indices);
  static RootSet all(int rank);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const;
  std::vector<int> members() const;

  constexpr RootSet with(int i) const { return RootSet(bits_ | (std::uint64_t{1} << i)); }
  constexpr RootSet without(int i) const { return RootSet(bits_ & ~(std::uint64_t{1} << i)); }
  constexpr bool subset_of(RootSet o) const { return (bits_ & ~o.bits_) == 0; }

  friend constexpr RootSet operator|(RootSet a, RootSet b) { return RootSet(a.bits_ | b.bits_); }
  friend constexpr RootSet operator&(RootSet a, RootSet b) { return RootSet(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr RootSet operator-(RootSet a, RootSet b) { return RootSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(RootSet, RootSet) = default;

 private:
  explicit constexpr RootSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// "{}" or "{1,3}" with 1-based indices.
std::string to_string(RootSet s);

/// Every subset of `universe`, in increasing bit order.
std::vector<RootSet> subsets_of(RootSet universe);

struct Component {
  ComponentSpec type;
  RootSet roots;
};

/// A reduced root system given by its simple roots and Weyl-invariant inner
/// product. Vectors of E are stored in simple-root coordinates; vectors of the
/// dual space E* in the dual basis, i.e. by their values on the simple roots.
/// With these conventions evaluating a root on an element of E* is a dot product.
class RootSystem {
 public:
  /// Bourbaki-normalized orthogonal direct sum. Throws InvalidRank.
  static RootSystem build(const SystemSpec& spec);
  static RootSystem build(std::string_view spec) { return build(parse_system_spec(spec)); }

  /// Any Gramm matrix of a finite reduced root system (symmetric, positive
  /// definite, integral Cartan matrix). Components are classified against the
  /// catalogue. Throws InvalidGramm.
  static RootSystem from_gramm(QMatrix gramm);

  int rank() const { return static_cast<int>(gramm_.rows()); }
  const QMatrix& gramm() const { return gramm_; }
  const std::vector<Component>& components() const { return components_; }
  /// Positive roots as nonnegative coefficient vectors over the simple roots,
  /// sorted by height then lexicographically.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }
  std::vector<RootSet> dynkin_components() const;

  bool irreducible() const { return components_.size() == 1; }
  /// Index into components() of the component holding `alpha`.
  std::size_t component_index(int alpha) const;
  RootSet component_of(int alpha) const { return components_[component_index(alpha)].roots; }
  SystemSpec spec() const;
  std::string name() const { return to_string(spec()); }

  void check_root(int alpha) const;
  void check_subset(RootSet s) const;

  /// Inner product on E in simple-root coordinates.
  Rational inner(const QVector& x, const QVector& y) const;
  /// The coroot 2 beta / (beta, beta) as an element of E*.
  QVector coroot(int beta) const;

  /// Same simple roots with the inner product on component k multiplied by scales[k].
  RootSystem rescaled(const std::vector<Rational>& scales) const;
  /// Sub-root-system spanned by `subset`; simple root i of the result is the
  /// i-th member of `subset`.
  RootSystem restrict_to(RootSet subset) const;

 private:
  RootSystem() = default;
  void finish();

  QMatrix gramm_;
  std::vector<Component> components_;
  std::vector<std::vector<int>> positive_roots_;
};

/// Dual weights, their pairings, and the weighted dual weights.
struct WeightTable {
  /// coupling(a, b) = (w_a, w_b); the inverse of the Gramm matrix.
  QMatrix coupling;
  /// dual[a] = w_a in simple-root coordinates (row a of `coupling`).
  std::vector<QVector> dual;
  /// d[a] = sum over b of (w_a, w_b).
  QVector d;
  /// weighted[a] = w_a / d_a; its coordinates sum to 1.
  std::vector<QVector> weighted;
};

WeightTable weight_table(const RootSystem& rs);

/// (a,a) d_a + sum_{b != a} (a,b) d_b == 1, exactly.
bool check_2d_identity(const RootSystem& rs, const WeightTable& wt, int alpha);

/// True iff the Dynkin component containing `alpha` meets `target`.
bool connected_to(const RootSystem& rs, int alpha, RootSet target);

struct ParabolicCharacter {
  /// Sum of the positive roots whose alpha-coefficient is positive.
  std::vector<int> root_sum;
  /// root_sum == lambda * w_alpha, lambda > 0.
  Rational lambda;
};

/// Throws NotProportional if the sum is not a positive multiple of w_alpha.
ParabolicCharacter parabolic_character(const RootSystem& rs, const WeightTable& wt, int alpha);

}  // namespace dw
