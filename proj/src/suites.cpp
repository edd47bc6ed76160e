#include "dualweight/suites.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "dualweight/appendix.hpp"
#include "dualweight/cone.hpp"
#include "dualweight/errors.hpp"
#include "dualweight/parabolic.hpp"
#include "dualweight/report.hpp"
#include "dualweight/sweep.hpp"

namespace dw {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// One unit of work: a system, and a simple root or 0 for whole-system checks.
struct Unit {
  std::string system;
  int alpha = 0;
};

VerifyRow row(const std::string& suite, const std::string& anchor, const RootSystem& rs, int alpha,
              std::string subsets, std::string route) {
  VerifyRow r;
  r.suite = suite;
  r.anchor = anchor;
  r.system = rs.name();
  r.alpha = alpha;
  r.subsets = std::move(subsets);
  r.route = std::move(route);
  return r;
}

// Runs body, timing it and turning a dw::Error into a failing row.
template <class Body>
VerifyRow checked(VerifyRow r, Body&& body) {
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.status = "fail";
    r.evidence["error"] = e.what();
  }
  r.wall_time = seconds_since(start);
  return r;
}

std::string pass_if(bool ok) { return ok ? "pass" : "fail"; }

std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

std::string pair_label(const char* a, RootSet x, const char* b, RootSet y) {
  return std::string(a) + "=" + to_string(x) + ";" + b + "=" + to_string(y);
}

std::vector<VerifyRow> gramm_inverse(const RootSystem& rs) {
  return {checked(row("gramm-inverse", "gramm-inverse", rs, 0, "", "fraction-free"), [&](VerifyRow& r) {
    const QMatrix inv = invert(rs.gramm());
    const auto n = static_cast<std::size_t>(rs.rank());
    bool ok = inv * rs.gramm() == QMatrix::identity(n) && rs.gramm() * inv == QMatrix::identity(n);
    // Column-by-column solve as an independent route.
    for (std::size_t j = 0; j < n && ok; ++j) ok = solve(rs.gramm(), unit_vector(n, j)) == inv.column_vector(j);
    r.status = pass_if(ok);
    r.evidence = {{"determinant", to_json(determinant(rs.gramm()))}};
  })};
}

std::vector<VerifyRow> inverse_gramm_suite(const RootSystem& rs) {
  if (!rs.irreducible()) return {};
  return {checked(row("inverse-gramm-positive", "inverse-gramm-positive", rs, 0, "", "exact"), [&](VerifyRow& r) {
    r.status = pass_if(verify_inverse_gramm_positive(rs));
    r.evidence = {{"inverse", to_json(invert(rs.gramm()))}};
  })};
}

std::vector<VerifyRow> subdiagram_suite(const RootSystem& rs) {
  return {checked(row("subdiagram-classification", "subdiagram-classification", rs, 0, "", "catalogue"), [&](VerifyRow& r) {
    const auto classes = classify_connected_subdiagrams(rs);
    json types = json::object();
    for (const auto& c : classes) types[to_string(c.roots)] = c.classified ? to_string(c.type) : "unclassified";
    r.status = pass_if(verify_subdiagrams_classified(rs));
    r.evidence = {{"connected_subdiagrams", classes.size()}, {"types", types}};
  })};
}

std::vector<VerifyRow> identity_2d(const RootSystem& rs, const WeightTable& wt, int a) {
  return {checked(row("identity-2d", "weight-identity", rs, a + 1, "", "direct"), [&](VerifyRow& r) {
    // alpha = sum_b (alpha, b) w_b, the inverse of w_a = sum_b (w_a, w_b) b.
    const auto n = static_cast<std::size_t>(rs.rank());
    QVector back(n);
    for (std::size_t b = 0; b < n; ++b) back = back + rs.gramm()(static_cast<std::size_t>(a), b) * wt.dual[b];
    const bool round_trip = back == unit_vector(n, static_cast<std::size_t>(a));
    r.status = pass_if(check_2d_identity(rs, wt, a) && round_trip);
    r.evidence = {{"d", to_json(wt.d[static_cast<std::size_t>(a)])}, {"round_trip", round_trip}};
  })};
}

std::vector<VerifyRow> coefficient_suite(const RootSystem& rs, const WeightTable& wt, int a) {
  std::vector<VerifyRow> out;
  for (RootSet s : subsets_of(RootSet::all(rs.rank()))) {
    out.push_back(checked(row("coefficient-signs", "coefficient-signs", rs, a + 1, to_string(s), "block+solve"), [&](VerifyRow& r) {
      r.evidence = to_json(expand_coefficients(rs, wt, a, s));
      r.status = "pass";
    }));
  }
  return out;
}

std::vector<VerifyRow> root_inequality_suite(const RootSystem& rs, const WeightTable& wt, int a, bool rays) {
  std::vector<VerifyRow> out;
  const std::string suite = rays ? "root-inequality-rays" : "root-inequality-constructive";
  for (RootSet s : subsets_of(RootSet::all(rs.rank()).without(a))) {
    out.push_back(checked(row(suite, "root-inequality", rs, a + 1, to_string(s), rays ? "rays" : "constructive"),
                          [&](VerifyRow& r) {
                            if (rays) {
                              const Certificate c = verify_root_inequality_rays(root_inequality_cone(rs, wt, a, s));
                              r.status = pass_if(c.nonnegative());
                              Rational low;
                              for (std::size_t i = 0; i < c.ray_objectives.size(); ++i)
                                if (i == 0 || c.ray_objectives[i] < low) low = c.ray_objectives[i];
                              r.evidence = {{"rays", c.extreme_rays.size()},
                                            {"lineality_dim", c.lineality_dim},
                                            {"min_objective", to_json(low)}};
                              if (!c.nonnegative()) r.evidence["ray"] = to_json(c.ray);
                            } else {
                              r.evidence = to_json(verify_root_inequality_constructive(rs, wt, a, s));
                              r.status = "pass";
                            }
                          }));
  }
  return out;
}

std::vector<VerifyRow> growth_bound(const RootSystem& rs, const WeightTable& wt, int a) {
  std::vector<VerifyRow> out;
  for (RootSet s : subsets_of(RootSet::all(rs.rank()).without(a))) {
    const RootSet others = RootSet::all(rs.rank()) - s.with(a);
    if (!connected_to(rs, a, others)) continue;
    out.push_back(checked(row("growth-bound", "divergence-bound", rs, a + 1, to_string(s), "rays+samples"), [&](VerifyRow& r) {
      const ConeSpec cone = root_inequality_cone(rs, wt, a, s);
      const ConeGenerators gen = extreme_rays(cone.equalities, cone.inequalities, cone.ambient_dim);
      if (!gen.lineality.empty()) throw InternalError("root-inequality cone is not pointed");
      // The bound is linear, so the extreme rays decide it on the whole cone;
      // growing interior samples exercise the sequence form.
      std::vector<QVector> trace = gen.rays;
      QVector inner(cone.ambient_dim);
      for (const auto& ray : gen.rays) inner = inner + ray;
      for (long n = 1; n <= 8; ++n) trace.push_back(Rational(n) * inner + gen.rays[static_cast<std::size_t>(n) % gen.rays.size()]);
      r.status = pass_if(verify_divergence_bound(rs, wt, a, s, trace));
      r.evidence = {{"rays", gen.rays.size()}, {"samples", trace.size()}};
    }));
  }
  return out;
}

std::vector<VerifyRow> parabolic(const RootSystem& rs, const WeightTable& wt) {
  std::vector<VerifyRow> out;
  const RootSet full = RootSet::all(rs.rank());
  const std::string suite = "parabolic-lemmas";
  for (RootSet i : subsets_of(full)) {
    out.push_back(checked(row(suite, "parabolic-datum", rs, 0, "I=" + to_string(i), "kernel+coroots"), [&](VerifyRow& r) {
      const ParabolicDatum d = make_datum(rs, i);
      const bool ok = d.a_lower.dim() + d.a_upper.dim() == static_cast<std::size_t>(rs.rank()) &&
                      d.a_upper.dim() == static_cast<std::size_t>(i.size());
      r.status = pass_if(ok);
    }));
    for (RootSet j : subsets_of(i)) {
      out.push_back(checked(row(suite, "kernel-inclusion", rs, 0, pair_label("J", j, "I", i), "subspace"),
                            [&](VerifyRow& r) { r.status = pass_if(verify_inc(rs, j, i)); }));
    }
  }
  for (RootSet i1 : subsets_of(full))
    for (RootSet i2 : subsets_of(i1))
      for (RootSet i3 : subsets_of(i2)) {
        const std::string label = "I3=" + to_string(i3) + ";I2=" + to_string(i2) + ";I1=" + to_string(i1);
        out.push_back(checked(row(suite, "relative-tori-sum", rs, 0, label, "subspace"),
                              [&](VerifyRow& r) { r.status = pass_if(verify_tori(rs, i3, i2, i1)); }));
      }
  for (int a = 0; a < rs.rank(); ++a) {
    out.push_back(checked(row(suite, "weight-kills-other-coroots", rs, a + 1, "", "subspace"),
                          [&](VerifyRow& r) { r.status = pass_if(verify_trivial(rs, wt, a)); }));
  }
  for (int a = 0; a < rs.rank(); ++a)
    for (RootSet i : subsets_of(full.without(a))) {
      if (connected_to(rs, a, full - i.with(a))) continue;
      for (RootSet j : subsets_of(full)) {
        out.push_back(checked(row(suite, "disconnected-kernel", rs, a + 1, pair_label("I", i, "J", j), "subspace"),
                              [&](VerifyRow& r) { r.status = pass_if(verify_discon(rs, a, i, j)); }));
      }
    }
  // The nested-parabolic shadow has many more tuples; keep it to small ranks.
  if (rs.rank() <= 4) {
    for (RootSet ip : subsets_of(full))
      for (RootSet i : subsets_of(ip))
        for (RootSet jp : subsets_of(ip))
          for (RootSet j : subsets_of(i & jp)) {
            const std::string label = pair_label("I", i, "J", j) + ";" + pair_label("I'", ip, "J'", jp);
            out.push_back(checked(row(suite, "nested-parabolic", rs, 0, label, "subspace"),
                                  [&](VerifyRow& r) { r.status = pass_if(verify_para_shadow(rs, i, j, ip, jp)); }));
          }
  }
  return out;
}

std::vector<VerifyRow> controls(const RootSystem& rs, const WeightTable& wt, int a) {
  std::vector<VerifyRow> out;
  auto control = [&](RootSet s, Hypothesis h, int dropped, const std::string& route) {
    out.push_back(checked(row("controls", "hypothesis-dropped", rs, a + 1, to_string(s), route), [&](VerifyRow& r) {
      const Certificate c = verify_root_inequality_rays(root_inequality_cone(rs, wt, a, s, h, dropped));
      r.status = c.nonnegative() ? "pass" : "expected";
      if (!c.nonnegative()) r.evidence = {{"ray", to_json(c.ray)}, {"objective", to_json(c.ray_objective)}};
    }));
  };
  for (RootSet s : subsets_of(RootSet::all(rs.rank()).without(a))) {
    control(s, Hypothesis::drop_ordering, -1, "drop-ordering");
    control(s, Hypothesis::drop_nonnegative, -1, "drop-nonnegative");
    for (int g : (RootSet::all(rs.rank()) - s.with(a)).members())
      control(s, Hypothesis::drop_one_ordering, g, "drop-ordering-" + std::to_string(g + 1));
  }
  return out;
}

std::vector<VerifyRow> chi(const RootSystem& rs, const WeightTable& wt, int a) {
  return {checked(row("chi-proportionality", "parabolic-character", rs, a + 1, "", "root-sum"), [&](VerifyRow& r) {
    const ParabolicCharacter pc = parabolic_character(rs, wt, a);
    r.status = "pass";
    r.evidence = {{"lambda", to_json(pc.lambda)}, {"root_sum", pc.root_sum}};
  })};
}

std::vector<VerifyRow> scaling(const RootSystem& rs, const WeightTable& wt, std::uint64_t seed) {
  return {checked(row("scaling", "scaling-invariance", rs, 0, "", "random-rescaling"), [&](VerifyRow& r) {
    std::mt19937_64 gen(derive_seed(seed, name_hash(rs.name())));
    bool ok = true;
    constexpr int kTrials = 100;
    for (int t = 0; t < kTrials && ok; ++t) {
      std::vector<Rational> scales;
      for (std::size_t k = 0; k < rs.components().size(); ++k)
        scales.emplace_back(static_cast<long>(1 + gen() % 50), static_cast<long>(1 + gen() % 50));
      ok = weight_table(rs.rescaled(scales)).weighted == wt.weighted;
    }
    r.status = pass_if(ok);
    r.evidence = {{"trials", kTrials}};
  })};
}

bool per_root(const std::string& suite) {
  return suite != "gramm-inverse" && suite != "subdiagram-classification" && suite != "inverse-gramm-positive" &&
         suite != "parabolic-lemmas" && suite != "scaling";
}

std::vector<VerifyRow> run_unit(const std::string& suite, const Unit& u, std::uint64_t seed) {
  const RootSystem rs = RootSystem::build(u.system);
  const WeightTable wt = weight_table(rs);
  const int a = u.alpha - 1;
  if (suite == "gramm-inverse") return gramm_inverse(rs);
  if (suite == "inverse-gramm-positive") return inverse_gramm_suite(rs);
  if (suite == "identity-2d") return identity_2d(rs, wt, a);
  if (suite == "coefficient-signs") return coefficient_suite(rs, wt, a);
  if (suite == "root-inequality-constructive") return root_inequality_suite(rs, wt, a, false);
  if (suite == "root-inequality-rays") return root_inequality_suite(rs, wt, a, true);
  if (suite == "subdiagram-classification") return subdiagram_suite(rs);
  if (suite == "growth-bound") return growth_bound(rs, wt, a);
  if (suite == "parabolic-lemmas") return parabolic(rs, wt);
  if (suite == "controls") return controls(rs, wt, a);
  if (suite == "chi-proportionality") return chi(rs, wt, a);
  if (suite == "scaling") return scaling(rs, wt, seed);
  throw PreconditionViolated("unknown suite " + suite);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gramm-inverse",
                                                  "identity-2d",
                                                  "coefficient-signs",
                                                  "root-inequality-constructive",
                                                  "root-inequality-rays",
                                                  "subdiagram-classification",
                                                  "inverse-gramm-positive",
                                                  "parabolic-lemmas",
                                                  "controls",
                                                  "growth-bound",
                                                  "chi-proportionality",
                                                  "scaling"};
  return names;
}

std::vector<std::string> default_systems(int max_rank) {
  std::vector<std::string> out;
  for (int r = 1; r <= max_rank; ++r)
    for (const auto& c : catalogue(r)) out.push_back(to_string(c));
  for (const char* s : {"A1xA1", "A2xA1", "B2xA1", "G2xA1", "A1xA1xA1", "A2xA2", "A3xA1", "B3xA2"}) {
    int rank = 0;
    for (const auto& c : parse_system_spec(s)) rank += c.rank;
    if (rank <= max_rank) out.emplace_back(s);
  }
  return out;
}

std::vector<std::string> default_systems_for(const std::string& suite, int max_rank) {
  if (suite == "controls") {
    std::vector<std::string> out;
    for (const char* s : {"A2", "A3"})
      if (parse_system_spec(s).front().rank <= max_rank) out.emplace_back(s);
    return out;
  }
  return default_systems(max_rank);
}

std::vector<VerifyRow> run_suite(const std::string& suite, const std::vector<std::string>& systems, int max_rank,
                                 int jobs, std::uint64_t seed) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw PreconditionViolated("unknown suite " + suite);
  std::vector<Unit> units;
  for (const auto& name : systems) {
    const RootSystem rs = RootSystem::build(name);
    if (rs.rank() > max_rank) continue;
    if (per_root(suite)) {
      for (int a = 1; a <= rs.rank(); ++a) units.push_back({name, a});
    } else {
      units.push_back({name, 0});
    }
  }
  const auto parts = map_parallel(units.size(), jobs, [&](std::size_t i) { return run_unit(suite, units[i], seed); });
  std::vector<VerifyRow> rows;
  for (const auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  if (suite == "controls" && !rows.empty()) {
    // The controls succeed when dropping the ordering family breaks the inequality somewhere.
    bool found = false;
    for (const auto& r : rows) found = found || (r.route == "drop-ordering" && r.status == "expected");
    VerifyRow summary;
    summary.suite = "controls";
    summary.anchor = "hypotheses-necessary";
    summary.system = "*";
    summary.route = "drop-ordering";
    summary.status = pass_if(found);
    rows.push_back(summary);
  }
  return rows;
}

bool all_pass(const std::vector<VerifyRow>& rows) {
  for (const auto& r : rows)
    if (r.status == "fail") return false;
  return true;
}

std::vector<std::vector<int>> all_selections(int rank, int max_length) {
  std::vector<std::vector<int>> out;
  // Depth-first over ordered selections of distinct roots, shorter prefixes first.
  for (int len = 1; len <= std::min(rank, max_length); ++len) {
    std::vector<int> pick;
    std::vector<bool> used(static_cast<std::size_t>(rank), false);
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(pick.size()) == len) {
        out.push_back(pick);
        return;
      }
      for (int a = 0; a < rank; ++a) {
        if (used[static_cast<std::size_t>(a)]) continue;
        used[static_cast<std::size_t>(a)] = true;
        pick.push_back(a);
        self(self);
        pick.pop_back();
        used[static_cast<std::size_t>(a)] = false;
      }
    };
    rec(rec);
  }
  return out;
}

std::vector<SimRow> run_simulation(const SimulateOptions& opt) {
  struct Task {
    std::string system;
    std::vector<int> selection;
  };
  std::vector<Task> tasks;
  for (const auto& name : opt.systems) {
    const RootSystem rs = RootSystem::build(name);
    if (rs.rank() > opt.max_rank) continue;
    const auto sels = opt.selections.empty() ? all_selections(rs.rank(), rs.rank()) : opt.selections;
    for (const auto& s : sels) tasks.push_back({name, s});
  }
  const auto parts = map_parallel(tasks.size(), opt.jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    std::vector<SimRow> rows;
    const RootSystem rs = RootSystem::build(task.system);
    SimRow base;
    base.system = rs.name();
    base.selection = task.selection;
    std::shared_ptr<const SimPlan> plan;
    try {
      plan = make_plan(rs, task.selection);
    } catch (const InfeasibleSelection& e) {
      base.status = "infeasible";
      base.message = e.what();
      return std::vector<SimRow>{base};
    }
    for (int t = 0; t < opt.traces; ++t) {
      SimRow r = base;
      r.seed = derive_seed(opt.seed, static_cast<std::uint64_t>(t));
      r.horizon = opt.horizon;
      try {
        const SimTrace trace = generate_trace(plan, opt.horizon, r.seed);
        r.n0 = trace.n0;
        r.weights = trace.weights;
        r.roots = assert_divergence(trace).roots;
        if (!opt.series)
          for (auto& s : r.roots) s.values.clear();
        for (int depth = 0; depth + 2 <= plan->length(); ++depth) r.branches.push_back(replay_induction(trace, depth).branch);
        r.status = "pass";
      } catch (const Error& e) {
        r.status = "fail";
        r.message = e.what();
      }
      rows.push_back(std::move(r));
    }
    return rows;
  });
  std::vector<SimRow> rows;
  for (const auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  return rows;
}

}  // namespace dw
