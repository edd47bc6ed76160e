#include "dualweight/divergence.hpp"

#include <algorithm>
#include <climits>
#include <random>

#include "dualweight/cone.hpp"
#include "dualweight/errors.hpp"

namespace dw {

namespace {

std::string label(int i) { return std::to_string(i + 1); }

std::string selection_name(const std::vector<int>& sel) {
  std::string out = "(";
  for (std::size_t i = 0; i < sel.size(); ++i) out += (i ? "," : "") + label(sel[i]);
  return out + ")";
}

// Smallest integer >= q, clamped to the range of long.
long ceil_long(const Rational& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.numerator().get_mpz_t(), q.denominator().get_mpz_t());
  if (!c.fits_slong_p()) return c > 0 ? LONG_MAX : LONG_MIN;
  return c.get_si();
}

QVector restrict_coords(const QVector& v, const std::vector<int>& index) {
  QVector out(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) out[k] = v[static_cast<std::size_t>(index[k])];
  return out;
}

RootSet local_set(const std::vector<int>& index, RootSet ambient) {
  RootSet out;
  for (std::size_t k = 0; k < index.size(); ++k)
    if (ambient.contains(index[k])) out = out.with(static_cast<int>(k));
  return out;
}

// Affine value n * a + b of a functional along a trace.
struct Affine {
  Rational a;
  Rational b;
  Rational at(long n) const { return a * Rational(n) + b; }
};

// Walks an affine function over consecutive n with one addition per step.
struct AffineWalk {
  AffineWalk(const Affine& f, long n) : step(f.a), value(f.at(n)) {}
  void next() { value += step; }
  Rational step;
  Rational value;
};

Affine along(const QVector& f, const QVector& slope, const QVector& offset) { return {dot(f, slope), dot(f, offset)}; }

[[noreturn]] void diverge_fail(const SimTrace& t, const std::string& what) {
  throw DivergenceFailure(t.plan->rs.name() + " selection " + selection_name(t.plan->selection) + " seed " +
                          std::to_string(t.seed) + ": " + what);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::shared_ptr<const SimPlan> make_plan(const RootSystem& rs, const std::vector<int>& selection) {
  if (selection.empty()) throw PreconditionViolated("empty selection");
  RootSet seen;
  for (int a : selection) {
    rs.check_root(a);
    if (seen.contains(a)) throw PreconditionViolated("root " + label(a) + " selected twice");
    seen = seen.with(a);
  }
  auto plan = std::make_shared<SimPlan>(rs);
  plan->selection = selection;
  const int r = plan->length();
  const auto R = static_cast<std::size_t>(r);
  plan->subsets.push_back(RootSet::all(rs.rank()));
  for (int a : selection) plan->subsets.push_back(plan->subsets.back().without(a));
  const RootSet final_set = plan->subsets.back();

  for (int l = 1; l <= r; ++l) {
    const Subspace line = relative_torus(rs, plan->subsets[l - 1], plan->subsets[l]);
    if (line.dim() != 1) throw InternalError("relative torus of one removed root has dimension " + std::to_string(line.dim()));
    QVector v = primitive_integer(line.basis().front());
    const auto root = static_cast<std::size_t>(selection[l - 1]);
    if (v[root].is_zero()) throw InternalError("removed root vanishes on its relative torus");
    if (v[root].sign() < 0) v = Rational(-1) * v;
    plan->direction.push_back(std::move(v));
    plan->relative.push_back(relative_weights(rs, plan->subsets[l - 1]));
  }

  // Constraint rows on s in Q^R; theta^(l) = sum_{m >= l} s_m direction[m-1].
  for (int l = 1; l <= r; ++l) {
    plan->constraints.push_back(unit_vector(R, static_cast<std::size_t>(l - 1)));
    plan->constraint_labels.push_back("s" + std::to_string(l) + ">=0");
  }
  for (int l = 1; l <= r; ++l) {
    const RelativeWeights& rw = plan->relative[static_cast<std::size_t>(l - 1)];
    const QVector f = rw.weighted(selection[l - 1]);
    auto row_of = [&](const QVector& functional) {
      QVector row(R);
      for (int m = l; m <= r; ++m)
        row[static_cast<std::size_t>(m - 1)] = dot(functional, plan->direction[static_cast<std::size_t>(m - 1)]);
      return row;
    };
    for (int k = l + 1; k <= r; ++k) {
      plan->constraints.push_back(row_of(f - rw.weighted(selection[k - 1])));
      plan->constraint_labels.push_back("level" + std::to_string(l) + ":wbar" + label(selection[l - 1]) + ">=wbar" +
                                        label(selection[k - 1]));
    }
    plan->constraints.push_back(row_of(f));
    plan->constraint_labels.push_back("level" + std::to_string(l) + ":wbar" + label(selection[l - 1]) + ">=0");
  }
  const ConeGenerators gen = extreme_rays({}, plan->constraints, R);
  if (!gen.lineality.empty()) throw InternalError("coefficient cone is not pointed");
  plan->rays = gen.rays;
  for (int l = 1; l <= r; ++l) {
    const bool any = std::any_of(plan->rays.begin(), plan->rays.end(),
                                 [&](const QVector& ray) { return ray[static_cast<std::size_t>(l - 1)].sign() > 0; });
    if (!any) {
      throw InfeasibleSelection(rs.name() + " selection " + selection_name(selection) + ": no admissible ray grows at level " +
                                std::to_string(l));
    }
  }

  for (int j = 1; j < r; ++j) {
    const RootSet outer = plan->subsets[static_cast<std::size_t>(j - 1)];
    SimPlan::Level lv(rs.restrict_to(outer));
    const std::vector<int> index = outer.members();
    lv.local_root = static_cast<int>(std::find(index.begin(), index.end(), selection[j - 1]) - index.begin());
    lv.local_final = local_set(index, final_set);
    RootSet later;
    for (int k = j + 1; k <= r; ++k) later = later.with(selection[k - 1]);
    lv.connected = connected_to(lv.sub, lv.local_root, local_set(index, later));
    if (lv.connected) {
      lv.certificate = verify_root_inequality_constructive(lv.sub, lv.sub_wt, lv.local_root, lv.local_final);
    } else {
      lv.discon_holds = verify_discon(lv.sub, lv.local_root, lv.local_final, local_set(index, plan->subsets[j]));
    }
    lv.upper_equations = upper_torus(rs, outer).annihilator();
    for (int k = j; k <= r; ++k) {
      const RootSet cut = outer.without(selection[k - 1]);
      const Subspace first = relative_torus(rs, cut, final_set);
      const Subspace second = relative_torus(rs, outer, cut);
      lv.splits.push_back({sum(first, second).annihilator(), projection_along(first, second)});
    }
    plan->levels.push_back(std::move(lv));
  }
  return plan;
}

QVector CoupleStep::component(long n) const { return Rational(n) * slope + offset; }

QVector SimTrace::theta_slope(int level) const {
  QVector v(static_cast<std::size_t>(plan->rs.rank()));
  for (auto m = static_cast<std::size_t>(level - 1); m < steps.size(); ++m) v = v + steps[m].slope;
  return v;
}

QVector SimTrace::theta_offset(int level) const {
  QVector v(static_cast<std::size_t>(plan->rs.rank()));
  for (auto m = static_cast<std::size_t>(level - 1); m < steps.size(); ++m) v = v + steps[m].offset;
  return v;
}

QVector SimTrace::theta(int level, long n) const { return Rational(n) * theta_slope(level) + theta_offset(level); }

SimTrace trace_from_weights(std::shared_ptr<const SimPlan> plan, long horizon, std::uint64_t seed,
                            std::vector<RayWeight> weights) {
  if (horizon < 0) throw PreconditionViolated("negative horizon");
  const auto R = static_cast<std::size_t>(plan->length());
  QVector s_slope(R), s_offset(R);
  for (const auto& w : weights) {
    if (w.ray >= plan->rays.size()) throw PreconditionViolated("ray index " + std::to_string(w.ray) + " out of range");
    if (w.lambda < 0) throw PreconditionViolated("negative growth rate");
    s_slope = s_slope + Rational(w.lambda) * plan->rays[w.ray];
    s_offset = s_offset + Rational(w.mu) * plan->rays[w.ray];
  }
  SimTrace t;
  t.seed = seed;
  t.horizon = horizon;
  t.weights = std::move(weights);
  long n0 = 1;
  for (std::size_t i = 0; i < plan->constraints.size(); ++i) {
    const Rational a = dot(plan->constraints[i], s_slope);
    const Rational b = dot(plan->constraints[i], s_offset);
    if (a.sign() < 0 || (a.is_zero() && b.sign() < 0)) {
      throw PreconditionViolated("weights never settle on " + plan->constraint_labels[i]);
    }
    if (a.sign() > 0 && b.sign() < 0) n0 = std::max(n0, ceil_long(-b / a));
  }
  for (std::size_t l = 0; l < R; ++l) {
    if (s_slope[l].sign() <= 0) throw PreconditionViolated("level " + std::to_string(l + 1) + " does not grow");
  }
  t.n0 = n0;
  for (std::size_t l = 0; l < R; ++l) {
    CoupleStep st;
    st.level = static_cast<int>(l + 1);
    st.selected_root = plan->selection[l];
    st.subset_after = plan->subsets[l + 1];
    st.slope = s_slope[l] * plan->direction[l];
    st.offset = s_offset[l] * plan->direction[l];
    t.steps.push_back(std::move(st));
  }
  t.plan = std::move(plan);
  return t;
}

SimTrace generate_trace(std::shared_ptr<const SimPlan> plan, long horizon, std::uint64_t seed) {
  if (horizon < 0) throw PreconditionViolated("negative horizon");
  // Raw engine output with modular reduction keeps draws identical across
  // standard libraries.
  std::mt19937_64 gen(seed);
  std::vector<RayWeight> weights;
  for (std::size_t i = 0; i < plan->rays.size(); ++i) {
    RayWeight w;
    w.ray = i;
    w.lambda = 1 + static_cast<long>(gen() % 4);
    w.mu = static_cast<long>(gen() % 7) - 3;
    weights.push_back(w);
  }
  return trace_from_weights(std::move(plan), horizon, seed, std::move(weights));
}

SimTrace generate_trace(const RootSystem& rs, const std::vector<int>& selection, long horizon, std::uint64_t seed) {
  return generate_trace(make_plan(rs, selection), horizon, seed);
}

bool constraints_hold(const SimTrace& trace, long n) {
  const SimPlan& p = *trace.plan;
  for (int l = 1; l <= p.length(); ++l) {
    const QVector th = trace.theta(l, n);
    const RelativeWeights& rw = p.relative[static_cast<std::size_t>(l - 1)];
    const Rational top = dot(rw.weighted(p.selection[l - 1]), th);
    if (top.sign() < 0) return false;
    for (int k = l + 1; k <= p.length(); ++k)
      if (dot(rw.weighted(p.selection[k - 1]), th) > top) return false;
    if (trace.steps[static_cast<std::size_t>(l - 1)].component(n)[static_cast<std::size_t>(p.selection[l - 1])].sign() < 0)
      return false;
  }
  return true;
}

DivergenceReport assert_divergence(const SimTrace& trace) {
  DivergenceReport rep;
  if (trace.horizon == 0) return rep;
  const SimPlan& p = *trace.plan;
  const QVector slope = trace.theta_slope(1);
  const QVector offset = trace.theta_offset(1);
  const long first = std::max<long>(trace.n0, 1);
  for (int j = 1; j <= p.length(); ++j) {
    const auto root = static_cast<std::size_t>(p.selection[j - 1]);
    RootSeries rsr;
    rsr.root = p.selection[j - 1];
    rsr.slope = slope[root];
    Rational best;
    bool have_best = false;
    rsr.values.reserve(static_cast<std::size_t>(trace.horizon));
    Rational current = slope[root] + offset[root];
    for (long n = 1; n <= trace.horizon; ++n, current += slope[root]) {
      rsr.values.push_back(current);
      if (n > first) {
        const Rational step = rsr.values.back() - rsr.values[rsr.values.size() - 2];
        if (!have_best || step < best) best = step;
        have_best = true;
      }
    }
    rsr.fitted_lower_slope = have_best ? best : Rational(0);
    if (rsr.slope.sign() <= 0) diverge_fail(trace, "root " + label(rsr.root) + " has growth rate " + rsr.slope.to_string());
    if (have_best) {
      if (best.sign() <= 0) diverge_fail(trace, "root " + label(rsr.root) + " is not increasing after n0");
      const Rational last = rsr.values.back();
      for (std::size_t i = 0; i + 1 < rsr.values.size(); ++i)
        if (!(rsr.values[i] < last))
          diverge_fail(trace, "root " + label(rsr.root) + " does not exceed its earlier value " + rsr.values[i].to_string());
    }
    if (j == p.length()) {
      // Base case: the last selected root sees only the last component.
      const CoupleStep& last = trace.steps.back();
      if (last.slope[root] != slope[root] || last.offset[root] != offset[root])
        diverge_fail(trace, "last root differs from its value on the last component");
    }
    rep.roots.push_back(std::move(rsr));
  }
  return rep;
}

InductionReport replay_induction(const SimTrace& trace, int depth) {
  const SimPlan& p = *trace.plan;
  const int r = p.length();
  InductionReport rep;
  rep.depth = depth;
  if (depth < 0 || depth > r - 2) return rep;
  const int j = r - 1 - depth;
  rep.level = j;
  rep.root = p.selection[static_cast<std::size_t>(j - 1)];
  const SimPlan::Level& lv = p.levels[static_cast<std::size_t>(j - 1)];
  const auto root = static_cast<std::size_t>(rep.root);
  const QVector th_slope = trace.theta_slope(j);
  const QVector th_offset = trace.theta_offset(j);
  const CoupleStep& own = trace.steps[static_cast<std::size_t>(j - 1)];
  const long first = std::max<long>(trace.n0, 1);
  rep.checked = std::max<long>(0, trace.horizon - first + 1);

  // Kernel bookkeeping: earlier components vanish on the root.
  for (int m = 1; m < j; ++m) {
    const CoupleStep& st = trace.steps[static_cast<std::size_t>(m - 1)];
    if (!st.slope[root].is_zero() || !st.offset[root].is_zero())
      diverge_fail(trace, "component " + std::to_string(m) + " does not vanish on root " + label(rep.root));
  }
  for (const auto& eq : lv.upper_equations)
    if (!dot(eq, th_slope).is_zero() || !dot(eq, th_offset).is_zero())
      diverge_fail(trace, "theta at level " + std::to_string(j) + " leaves the coroot span");

  // Decomposition bookkeeping for every root selected at level j or later.
  const RelativeWeights& rw = p.relative[static_cast<std::size_t>(j - 1)];
  for (int k = j; k <= r; ++k) {
    const SimPlan::Level::Split& split = lv.splits[static_cast<std::size_t>(k - j)];
    const QVector f = rw.weighted(p.selection[static_cast<std::size_t>(k - 1)]);
    for (const QVector* v : {&th_slope, &th_offset}) {
      for (const auto& eq : split.sum_equations)
        if (!dot(eq, *v).is_zero()) diverge_fail(trace, "theta leaves the sum of the relative tori at level " + std::to_string(j));
      const QVector c = split.to_second * *v;
      if (dot(f, *v) != dot(f, c))
        diverge_fail(trace, "weighted weight of root " + label(p.selection[static_cast<std::size_t>(k - 1)]) +
                                " sees the first summand at level " + std::to_string(j));
    }
    if (k == j && (dot(f, th_slope) != dot(f, own.slope) || dot(f, th_offset) != dot(f, own.offset)))
      diverge_fail(trace, "weighted weight differs between theta and its own component at level " + std::to_string(j));
  }

  const std::vector<int> index = p.subsets[static_cast<std::size_t>(j - 1)].members();
  const QVector ls = restrict_coords(th_slope, index);
  const QVector lo = restrict_coords(th_offset, index);
  if (!lv.connected) {
    rep.branch = "disconnected";
    if (!lv.discon_holds) throw BranchMismatch("disconnection lemma fails at level " + std::to_string(j));
    const Affine val = along(unit_vector(ls.size(), static_cast<std::size_t>(lv.local_root)), ls, lo);
    const Affine comp{own.slope[root], own.offset[root]};
    AffineWalk v(val, first), c(comp, first);
    for (long n = first; n <= trace.horizon; ++n, v.next(), c.next())
      if (v.value != c.value)
        diverge_fail(trace, "root " + label(rep.root) + " sees later components at n=" + std::to_string(n));
    if (val.a != comp.a || val.b != comp.b) diverge_fail(trace, "root " + label(rep.root) + " sees later components");
    return rep;
  }

  rep.branch = "connected";
  if (!lv.certificate.nonnegative()) throw BranchMismatch("no nonnegative certificate at level " + std::to_string(j));
  for (int b : lv.local_final.members()) {
    if (!ls[static_cast<std::size_t>(b)].is_zero() || !lo[static_cast<std::size_t>(b)].is_zero())
      throw BranchMismatch("theta is not in the common kernel of the final subset");
  }
  const auto la = static_cast<std::size_t>(lv.local_root);
  const Affine top = along(lv.sub_wt.weighted[la], ls, lo);
  std::vector<Affine> others;
  const RootSet rest = RootSet::all(lv.sub.rank()) - lv.local_final;
  for (int g : rest.members())
    if (g != lv.local_root) others.push_back(along(lv.sub_wt.weighted[static_cast<std::size_t>(g)], ls, lo));
  AffineWalk t(top, first), value(Affine{ls[la], lo[la]}, first);
  std::vector<AffineWalk> rivals;
  for (const auto& o : others) rivals.emplace_back(o, first);
  for (long n = first; n <= trace.horizon; ++n) {
    if (t.value.sign() < 0) throw BranchMismatch("weighted weight negative at n=" + std::to_string(n));
    for (auto& o : rivals) {
      if (o.value > t.value) throw BranchMismatch("ordering hypothesis fails at n=" + std::to_string(n));
      o.next();
    }
    if (value.value < t.value)
      diverge_fail(trace, "root " + label(rep.root) + " below its weighted weight at n=" + std::to_string(n));
    t.next();
    value.next();
  }
  return rep;
}

std::vector<QVector> naive_a2_components(long n) {
  return {QVector{Rational(n), Rational(0)}, QVector{Rational(-n, 2), Rational(n)}};
}

}  // namespace dw
