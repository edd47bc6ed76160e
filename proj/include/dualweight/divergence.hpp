#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dualweight/appendix.hpp"
#include "dualweight/parabolic.hpp"
#include "dualweight/root_system.hpp"
#include "dualweight/subspace.hpp"

namespace dw {

/// Everything about a (system, selection) pair that does not depend on the
/// random draw: the nested subsets, the one-dimensional relative tori, the
/// joint constraint cone and its extreme rays.
///
/// Level l (1-based) removes selection[l-1] from I_{l-1}, with I_0 = Delta.
/// a^(l) lives on the line spanned by direction[l-1]. A trace is described by
/// its coefficient vector s in Q^R: a^(l) = s_l direction[l-1].
struct SimPlan {
  explicit SimPlan(RootSystem system) : rs(std::move(system)), wt(weight_table(rs)) {}

  RootSystem rs;
  WeightTable wt;
  std::vector<int> selection;
  /// subsets[l] = I_l for l = 0..R.
  std::vector<RootSet> subsets;
  /// Primitive integer basis of upper(I_{l-1}) ^ lower(I_l), in E*, oriented
  /// so that the removed root is positive on it.
  std::vector<QVector> direction;
  /// Relative weights of I_{l-1}, per level.
  std::vector<RelativeWeights> relative;
  /// Rows c with c . s >= 0 cutting out the admissible coefficients.
  std::vector<QVector> constraints;
  std::vector<std::string> constraint_labels;
  /// Extreme rays of the constraint cone, primitive integer vectors in Q^R.
  std::vector<QVector> rays;

  /// Per level j = 1..R-1 (index j-1): the sub-system on I_{j-1}, the local
  /// index of the selected root inside it, whether that root is connected
  /// there to the roots selected later, and, in the connected case, the
  /// root-inequality certificate for (root, I_R) in the sub-system.
  struct Level {
    explicit Level(RootSystem s) : sub(std::move(s)), sub_wt(weight_table(sub)) {}

    RootSystem sub;
    WeightTable sub_wt;
    int local_root = 0;
    RootSet local_final;
    bool connected = false;
    /// Outcome of the disconnection lemma in the sub-system (disconnected case).
    bool discon_holds = false;
    Certificate certificate;
    /// Functionals cutting out upper(I_{j-1}), where theta^(j) must live.
    std::vector<QVector> upper_equations;
    /// For each later-or-equal level k >= j (index k-j), theta^(j) splits as
    /// b + c with b in relative(I_{j-1} - {root_k}, I_R) and c in
    /// relative(I_{j-1}, I_{j-1} - {root_k}).
    struct Split {
      /// Functionals cutting out the sum of the two summands.
      std::vector<QVector> sum_equations;
      /// v -> c on the sum.
      QMatrix to_second;
    };
    std::vector<Split> splits;
  };
  std::vector<Level> levels;

  int length() const { return static_cast<int>(selection.size()); }
};

/// Builds the plan. Throws UnknownRoot for an out-of-range root,
/// PreconditionViolated for an empty or repeating selection, and InfeasibleSelection when no
/// extreme ray is positive on some level's coefficient.
std::shared_ptr<const SimPlan> make_plan(const RootSystem& rs, const std::vector<int>& selection);

/// One ray of the constraint cone with its integer growth and offset:
/// contributes (lambda n + mu) ray to s(n).
struct RayWeight {
  std::size_t ray = 0;
  long lambda = 0;
  long mu = 0;
};

struct CoupleStep {
  int level = 0;
  int selected_root = 0;
  RootSet subset_after;
  /// a^(l)_n = n slope + offset, in E*.
  QVector slope;
  QVector offset;

  QVector component(long n) const;
};

struct SimTrace {
  std::shared_ptr<const SimPlan> plan;
  std::uint64_t seed = 0;
  long horizon = 0;
  /// First index from which every constraint holds (for all later n, not only
  /// up to the horizon). Time indices run over 1..horizon.
  long n0 = 1;
  std::vector<RayWeight> weights;
  std::vector<CoupleStep> steps;

  /// theta^(l)_n = sum over m >= l of a^(m)_n, 1-based level.
  QVector theta(int level, long n) const;
  QVector theta_slope(int level) const;
  QVector theta_offset(int level) const;
};

/// Draws positive integer growth rates and small integer offsets for every
/// ray from a generator seeded with `seed`. Throws PreconditionViolated for a
/// negative horizon.
SimTrace generate_trace(std::shared_ptr<const SimPlan> plan, long horizon, std::uint64_t seed);
SimTrace generate_trace(const RootSystem& rs, const std::vector<int>& selection, long horizon, std::uint64_t seed);

/// Rebuilds a trace from explicit ray weights, recomputing steps and n0.
/// Throws PreconditionViolated if the weights leave the cone or never settle.
SimTrace trace_from_weights(std::shared_ptr<const SimPlan> plan, long horizon, std::uint64_t seed,
                            std::vector<RayWeight> weights);

/// Value of every constraint at time n, for checking a trace from outside.
bool constraints_hold(const SimTrace& trace, long n);

/// Deterministic per-task seed derived from a base seed and a task index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

struct RootSeries {
  int root = 0;
  /// Exact growth rate of root(theta^(1)_n).
  Rational slope;
  /// Smallest consecutive increment over n0..horizon (equals slope when at
  /// least two samples exist, zero otherwise).
  Rational fitted_lower_slope;
  std::vector<Rational> values;
};

struct DivergenceReport {
  std::vector<RootSeries> roots;
  bool empty() const { return roots.empty(); }
};

/// Every selected root grows without bound on theta^(1)_n; the last selected
/// root sees only the last component. Throws DivergenceFailure.
DivergenceReport assert_divergence(const SimTrace& trace);

struct InductionReport {
  /// Depth l and the level j = R - 1 - l it concerns (1-based).
  int depth = 0;
  int level = 0;
  int root = 0;
  /// "disconnected" or "connected"; empty for a vacuous depth.
  std::string branch;
  /// Samples n0..horizon that were checked.
  long checked = 0;
  bool vacuous() const { return branch.empty(); }
};

/// Replays one induction step. Depths outside 0..R-2 are vacuous. Throws
/// BranchMismatch when the branch hypotheses fail and DivergenceFailure when
/// the bookkeeping identities do.
InductionReport replay_induction(const SimTrace& trace, int depth);

/// The naive A2 candidate a^(1)_n = (n, 0), a^(2)_n = (-n/2, n) on simple
/// roots; it violates the ordering constraint at level 1.
std::vector<QVector> naive_a2_components(long n);

}  // namespace dw
