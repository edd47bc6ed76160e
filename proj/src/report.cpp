#include "dualweight/report.hpp"

#include <sstream>

#include "dualweight/errors.hpp"

namespace dw {

using nlohmann::json;

json to_json(const Rational& q) { return q.to_string(); }

json to_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row_vector(i)));
  return out;
}

json to_json(const Subspace& s) {
  json out = json::array();
  for (const auto& b : s.basis()) out.push_back(to_json(b));
  return out;
}

json to_json(const Certificate& c) {
  json out;
  out["route"] = c.route;
  out["kind"] = c.nonnegative() ? "conic_combination" : "violating_ray";
  if (!c.multipliers.empty()) out["multipliers"] = to_json(c.multipliers);
  if (!c.equality_multipliers.empty()) out["equality_multipliers"] = to_json(c.equality_multipliers);
  if (!c.nonnegative()) {
    out["ray"] = to_json(c.ray);
    out["ray_objective"] = to_json(c.ray_objective);
  }
  if (c.route == "rays") {
    json rays = json::array();
    for (const auto& r : c.extreme_rays) rays.push_back(to_json(r));
    out["extreme_rays"] = rays;
    out["ray_objectives"] = to_json(c.ray_objectives);
    out["lineality_dim"] = c.lineality_dim;
  }
  return out;
}

json to_json(const CoefficientExpansion& e) {
  return {{"alpha", e.alpha + 1}, {"subset", to_string(e.subset)}, {"c", to_json(e.c)}};
}

json to_json(const ParabolicDatum& d) {
  return {{"subset", to_string(d.subset)},
          {"a_lower", to_json(d.a_lower)},
          {"a_upper", to_json(d.a_upper)},
          {"relative_d", to_json(d.relative.table.d)}};
}

json system_report(const RootSystem& rs) {
  const WeightTable wt = weight_table(rs);
  json comps = json::array();
  for (const auto& c : rs.components()) comps.push_back({{"type", to_string(c.type)}, {"roots", to_string(c.roots)}});
  json weighted = json::array();
  for (const auto& w : wt.weighted) weighted.push_back(to_json(w));
  json roots = json::array();
  for (const auto& r : rs.positive_roots()) roots.push_back(r);
  return {{"schema", 1},
          {"command", "build"},
          {"system", rs.name()},
          {"rank", rs.rank()},
          {"components", comps},
          {"gramm", to_json(rs.gramm())},
          {"positive_roots", roots},
          {"weights", {{"coupling", to_json(wt.coupling)}, {"d", to_json(wt.d)}, {"weighted", weighted}}}};
}

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw FormatError("fraction must be a string, got " + j.dump());
  return Rational::parse(j.get<std::string>());
}

QVector vector_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("vector must be an array");
  QVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

json trace_to_json(const SimTrace& t) {
  const SimPlan& p = *t.plan;
  json sel = json::array();
  for (int a : p.selection) sel.push_back(a + 1);
  json rays = json::array();
  for (const auto& r : p.rays) rays.push_back(to_json(r));
  json weights = json::array();
  for (const auto& w : t.weights) weights.push_back({{"ray", w.ray}, {"lambda", w.lambda}, {"mu", w.mu}});
  json levels = json::array();
  for (const auto& st : t.steps) {
    levels.push_back({{"level", st.level},
                      {"root", st.selected_root + 1},
                      {"subset_after", to_string(st.subset_after)},
                      {"direction", to_json(p.direction[static_cast<std::size_t>(st.level - 1)])},
                      {"slope", to_json(st.slope)},
                      {"offset", to_json(st.offset)}});
  }
  return {{"schema", 1},    {"system", p.rs.name()}, {"selection", sel}, {"horizon", t.horizon},
          {"seed", t.seed}, {"n0", t.n0},            {"rays", rays},     {"weights", weights},
          {"levels", levels}};
}

SimTrace trace_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw FormatError("unsupported trace schema");
    const RootSystem rs = RootSystem::build(j.at("system").get<std::string>());
    std::vector<int> sel;
    for (const auto& a : j.at("selection")) sel.push_back(a.get<int>() - 1);
    auto plan = make_plan(rs, sel);
    const auto& rays = j.at("rays");
    if (rays.size() != plan->rays.size()) throw FormatError("stored ray count differs from the rebuilt cone");
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (vector_from_json(rays[i]) != plan->rays[i]) throw FormatError("stored ray " + std::to_string(i) + " differs");
    std::vector<RayWeight> weights;
    for (const auto& w : j.at("weights"))
      weights.push_back({w.at("ray").get<std::size_t>(), w.at("lambda").get<long>(), w.at("mu").get<long>()});
    SimTrace t = trace_from_weights(plan, j.at("horizon").get<long>(), j.at("seed").get<std::uint64_t>(), weights);
    if (t.n0 != j.at("n0").get<long>()) throw FormatError("stored n0 differs from the replayed one");
    const auto& levels = j.at("levels");
    if (levels.size() != t.steps.size()) throw FormatError("level count differs");
    for (std::size_t l = 0; l < levels.size(); ++l) {
      if (vector_from_json(levels[l].at("slope")) != t.steps[l].slope ||
          vector_from_json(levels[l].at("offset")) != t.steps[l].offset)
        throw FormatError("stored component at level " + std::to_string(l + 1) + " differs");
    }
    return t;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed trace: ") + e.what());
  }
}

json to_json(const VerifyRow& r) {
  json out = {{"suite", r.suite}, {"anchor", r.anchor}, {"system", r.system}};
  out["alpha"] = r.alpha == 0 ? json(nullptr) : json(r.alpha);
  out["subset_I"] = r.subsets;
  out["route"] = r.route;
  out["status"] = r.status;
  out["evidence"] = r.evidence;
  out["wall_time"] = r.wall_time;
  return out;
}

json to_json(const SimRow& r) {
  json sel = json::array();
  for (int a : r.selection) sel.push_back(a + 1);
  json out = {{"system", r.system}, {"selection", sel}, {"seed", r.seed}, {"status", r.status}};
  if (!r.message.empty()) out["message"] = r.message;
  if (r.status == "infeasible") return out;
  out["horizon"] = r.horizon;
  out["n0"] = r.n0;
  json weights = json::array();
  for (const auto& w : r.weights) weights.push_back({{"ray", w.ray}, {"lambda", w.lambda}, {"mu", w.mu}});
  out["weights"] = weights;
  json roots = json::array();
  for (const auto& s : r.roots) {
    json x = {{"root", s.root + 1}, {"slope", to_json(s.slope)}, {"fitted_lower_slope", to_json(s.fitted_lower_slope)}};
    if (!s.values.empty()) x["series"] = to_json(s.values);
    roots.push_back(x);
  }
  out["roots"] = roots;
  out["induction"] = r.branches;
  return out;
}

json verify_report(const std::vector<VerifyRow>& rows) {
  json out = {{"schema", 1}, {"command", "verify"}, {"pass", all_pass(rows)}};
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  out["rows"] = arr;
  return out;
}

json simulate_report(const std::vector<SimRow>& rows, const json& config) {
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.status != "fail";
  json out = {{"schema", 1}, {"command", "simulate"}, {"config", config}, {"pass", pass}};
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  out["rows"] = arr;
  return out;
}

namespace {

// Quotes a CSV field when it contains a separator or a quote.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined(const QVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i].to_string();
  return out;
}

}  // namespace

std::string verify_csv(const std::vector<VerifyRow>& rows) {
  std::ostringstream os;
  os << "suite,anchor,system,alpha,subset_I,route,status,evidence,wall_time\n";
  for (const auto& r : rows) {
    os << r.suite << ',' << r.anchor << ',' << csv_field(r.system) << ',' << (r.alpha ? std::to_string(r.alpha) : "")
       << ',' << csv_field(r.subsets) << ',' << r.route << ',' << r.status << ',' << csv_field(r.evidence.dump()) << ','
       << r.wall_time << '\n';
  }
  return os.str();
}

std::string simulate_csv(const std::vector<SimRow>& rows) {
  std::ostringstream os;
  os << "system,selection,seed,status,n0,root,slope,fitted_lower_slope,induction\n";
  for (const auto& r : rows) {
    std::string sel;
    for (std::size_t i = 0; i < r.selection.size(); ++i) sel += (i ? " " : "") + std::to_string(r.selection[i] + 1);
    std::string branches;
    for (std::size_t i = 0; i < r.branches.size(); ++i) branches += (i ? " " : "") + r.branches[i];
    if (r.roots.empty()) {
      os << csv_field(r.system) << ',' << sel << ',' << r.seed << ',' << r.status << ",,,,," << branches << '\n';
      continue;
    }
    for (const auto& s : r.roots) {
      os << csv_field(r.system) << ',' << sel << ',' << r.seed << ',' << r.status << ',' << r.n0 << ',' << s.root + 1
         << ',' << s.slope << ',' << s.fitted_lower_slope << ',' << branches << '\n';
    }
  }
  return os.str();
}

std::string system_csv(const RootSystem& rs) {
  const WeightTable wt = weight_table(rs);
  std::ostringstream os;
  os << "root,d,coupling,weighted\n";
  for (int a = 0; a < rs.rank(); ++a) {
    const auto i = static_cast<std::size_t>(a);
    os << a + 1 << ',' << wt.d[i] << ',' << joined(wt.coupling.row_vector(i)) << ',' << joined(wt.weighted[i]) << '\n';
  }
  return os.str();
}

}  // namespace dw
