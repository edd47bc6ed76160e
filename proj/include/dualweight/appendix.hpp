#pragma once

#include <string>
#include <vector>

#include "dualweight/cone.hpp"
#include "dualweight/dynkin.hpp"
#include "dualweight/root_system.hpp"

namespace dw {

/// alpha = sum_{b in I} c[b] b + sum_{g not in I} c[g] w_g.
/// c is indexed by simple root: for members of I it is the coefficient of the
/// root itself, otherwise the coefficient of its dual weight.
struct CoefficientExpansion {
  int alpha = 0;
  RootSet subset;
  QVector c;
};

/// Coefficients through the block formula D = A [[B^-1, -B^-1 C], [0, Id]],
/// cross-checked against a direct solve in the mixed basis. Throws
/// CertificateFailure if the routes disagree or some c[d], d != alpha, is positive.
CoefficientExpansion expand_coefficients(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset);

/// Which hypotheses of the root inequality to leave out (control experiments).
enum class Hypothesis {
  all,               ///< the full cone
  drop_ordering,     ///< drop every wbar_alpha >= wbar_g
  drop_nonnegative,  ///< drop wbar_alpha >= 0
  drop_one_ordering  ///< drop wbar_alpha >= wbar_g for a single g
};

/// The cone of a in E* with b(a) = 0 for b in I,
/// wbar_alpha(a) >= wbar_g(a) for g outside I (g != alpha) and
/// wbar_alpha(a) >= 0; objective alpha - wbar_alpha.
struct ConeSpec {
  std::size_t ambient_dim = 0;
  std::vector<QVector> equalities;
  std::vector<QVector> inequalities;
  /// Human-readable names of the inequalities, 1-based root labels.
  std::vector<std::string> labels;
  QVector objective;
};

ConeSpec root_inequality_cone(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset,
                              Hypothesis h = Hypothesis::all, int dropped = -1);

struct Certificate {
  enum class Kind { conic_combination, violating_ray };
  Kind kind = Kind::conic_combination;
  std::string route;
  /// conic_combination from the constructive route: objective ==
  /// sum multipliers[i] * inequalities[i] + sum equality_multipliers[j] * equalities[j].
  QVector multipliers;
  QVector equality_multipliers;
  /// violating_ray: satisfies every constraint, objective(ray) < 0.
  QVector ray;
  Rational ray_objective;
  /// Ray route evidence: generators of the cone and the objective on each ray.
  std::vector<QVector> extreme_rays;
  std::vector<Rational> ray_objectives;
  std::size_t lineality_dim = 0;

  bool nonnegative() const { return kind == Kind::conic_combination; }
};

/// Builds the nonnegative combination read off from the coefficient
/// expansion, then re-expands it exactly. Requires alpha not in I.
/// Throws CertificateFailure on a negative multiplier or a mismatch.
Certificate verify_root_inequality_constructive(const RootSystem& rs, const WeightTable& wt, int alpha,
                                                RootSet subset);

/// Enumerates the extreme rays of the cone and evaluates the objective on
/// each of them (and on the lineality space).
Certificate verify_root_inequality_rays(const ConeSpec& cone);

/// Quantitative growth bound along a sequence a_n in a_I:
/// (1 - (w_a,w_a)/d_a) alpha(a_n) >= (1/d_a) sum_{b outside I u {alpha}} (w_a,w_b) b(a_n),
/// plus the strict inequality (w_a,w_a) < d_a. Throws PreconditionViolated
/// when alpha is not connected to the complement, some a_n leaves a_I, or the
/// ordering hypotheses fail at some n.
bool verify_divergence_bound(const RootSystem& rs, const WeightTable& wt, int alpha, RootSet subset,
                             const std::vector<QVector>& trace);

/// Every entry of the inverse Gramm matrix is positive. Throws NotIrreducible.
bool verify_inverse_gramm_positive(const RootSystem& rs);

struct SubdiagramClass {
  RootSet roots;
  bool positive_definite = false;
  bool classified = false;
  ComponentSpec type;
};

/// All connected induced subdiagrams, each tested for positive definiteness
/// and matched against the finite-type catalogue.
std::vector<SubdiagramClass> classify_connected_subdiagrams(const RootSystem& rs);
bool verify_subdiagrams_classified(const RootSystem& rs);

}  // namespace dw
