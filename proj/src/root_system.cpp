#include "dualweight/root_system.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <set>

#include "dualweight/errors.hpp"

namespace dw {

RootSet RootSet::of(std::initializer_list<int> indices) {
  RootSet s;
  for (int i : indices) s = s.with(i);
  return s;
}

RootSet RootSet::all(int rank) {
  return RootSet(rank >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rank) - 1);
}

int RootSet::size() const { return std::popcount(bits_); }

std::vector<int> RootSet::members() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string to_string(RootSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : s.members()) {
    if (!first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

std::vector<RootSet> subsets_of(RootSet universe) {
  // Enumerates submasks in increasing numeric order.
  std::vector<RootSet> out;
  std::uint64_t sub = 0;
  const std::uint64_t u = universe.bits();
  while (true) {
    out.push_back(RootSet::from_bits(sub));
    if (sub == u) break;
    sub = (sub - u) & u;
  }
  return out;
}

RootSystem RootSystem::build(const SystemSpec& spec) {
  if (spec.empty()) throw InvalidRank("empty system");
  int n = 0;
  for (const auto& c : spec) {
    validate(c);
    n += c.rank;
  }
  if (n > 63) throw InvalidRank("total rank above 63 is not supported");
  RootSystem rs;
  rs.gramm_ = QMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  int offset = 0;
  for (const auto& c : spec) {
    const QMatrix block = bourbaki_gramm(c);
    RootSet roots;
    for (int i = 0; i < c.rank; ++i) {
      roots = roots.with(offset + i);
      for (int j = 0; j < c.rank; ++j) {
        rs.gramm_(static_cast<std::size_t>(offset + i), static_cast<std::size_t>(offset + j)) =
            block(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
    rs.components_.push_back({c, roots});
    offset += c.rank;
  }
  rs.finish();
  return rs;
}

RootSystem RootSystem::from_gramm(QMatrix gramm) {
  if (!gramm.square() || gramm.rows() == 0) throw InvalidGramm("Gramm matrix must be square and nonempty");
  if (gramm.rows() > 63) throw InvalidGramm("rank above 63 is not supported");
  if (!gramm.symmetric()) throw InvalidGramm("Gramm matrix is not symmetric");
  for (std::size_t i = 0; i < gramm.rows(); ++i)
    for (std::size_t j = 0; j < gramm.cols(); ++j)
      if (i != j && gramm(i, j).sign() > 0) throw InvalidGramm("positive off-diagonal entry");
  if (!positive_definite(gramm)) throw InvalidGramm("Gramm matrix is not positive definite");
  RootSystem rs;
  for (const auto& comp : graph_components(gramm)) {
    const QMatrix sub = gramm.submatrix(comp, comp);
    const auto cls = classify_connected(sub);
    if (!cls) throw InvalidGramm("component is not of finite type");
    RootSet roots;
    for (auto i : comp) roots = roots.with(static_cast<int>(i));
    rs.components_.push_back({cls->type, roots});
  }
  rs.gramm_ = std::move(gramm);
  rs.finish();
  return rs;
}

void RootSystem::finish() {
  const std::size_t n = gramm_.rows();
  const auto cartan = cartan_matrix(gramm_);
  // Positive roots by closure: beta + alpha_i is a root iff the alpha_i-string
  // through beta continues upward, i.e. q = p - <beta, alpha_i^vee> > 0.
  std::set<std::vector<int>> known;
  std::vector<std::vector<int>> layer;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    layer.push_back(e);
    known.insert(e);
  }
  std::vector<std::vector<int>> all = layer;
  constexpr std::size_t kMaxRoots = 20000;
  while (!layer.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& beta : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        int p = 0;
        std::vector<int> down = beta;
        while (true) {
          down[i] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        int pairing = 0;  // <beta, alpha_i^vee>
        for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * cartan[j][i];
        if (p - pairing > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (!known.count(up)) next.insert(up);
        }
      }
    }
    layer.assign(next.begin(), next.end());
    for (const auto& r : layer) {
      known.insert(r);
      all.push_back(r);
    }
    if (all.size() > kMaxRoots) throw InvalidGramm("positive root closure does not terminate");
  }
  positive_roots_ = std::move(all);
}

std::vector<RootSet> RootSystem::dynkin_components() const {
  std::vector<RootSet> out;
  for (const auto& c : components_) out.push_back(c.roots);
  std::sort(out.begin(), out.end(), [](RootSet a, RootSet b) {
    return std::countr_zero(a.bits()) < std::countr_zero(b.bits());
  });
  return out;
}

std::size_t RootSystem::component_index(int alpha) const {
  check_root(alpha);
  for (std::size_t k = 0; k < components_.size(); ++k)
    if (components_[k].roots.contains(alpha)) return k;
  throw InternalError("root outside every component");
}

SystemSpec RootSystem::spec() const {
  SystemSpec s;
  for (const auto& c : components_) s.push_back(c.type);
  return s;
}

void RootSystem::check_root(int alpha) const {
  if (alpha < 0 || alpha >= rank()) {
    throw UnknownRoot("simple root index " + std::to_string(alpha + 1) + " outside 1.." +
                      std::to_string(rank()));
  }
}

void RootSystem::check_subset(RootSet s) const {
  if (!s.subset_of(RootSet::all(rank()))) throw UnknownRoot("subset " + to_string(s) + " outside the simple roots");
}

Rational RootSystem::inner(const QVector& x, const QVector& y) const { return dot(x, gramm_ * y); }

QVector RootSystem::coroot(int beta) const {
  check_root(beta);
  const auto b = static_cast<std::size_t>(beta);
  QVector v(gramm_.rows());
  const Rational factor = Rational(2) / gramm_(b, b);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * gramm_(i, b);
  return v;
}

RootSystem RootSystem::rescaled(const std::vector<Rational>& scales) const {
  if (scales.size() != components_.size()) throw DimensionMismatch("one scale per component expected");
  RootSystem rs = *this;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (scales[k].sign() <= 0) throw InvalidGramm("scales must be positive");
    for (int i : components_[k].roots.members())
      for (int j : components_[k].roots.members())
        rs.gramm_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *= scales[k];
  }
  return rs;
}

RootSystem RootSystem::restrict_to(RootSet subset) const {
  check_subset(subset);
  if (subset.empty()) throw InvalidRank("restriction to the empty set");
  std::vector<std::size_t> idx;
  for (int i : subset.members()) idx.push_back(static_cast<std::size_t>(i));
  return from_gramm(gramm_.submatrix(idx, idx));
}

WeightTable weight_table(const RootSystem& rs) {
  WeightTable wt;
  wt.coupling = invert(rs.gramm());
  const std::size_t n = wt.coupling.rows();
  for (std::size_t a = 0; a < n; ++a) {
    QVector w = wt.coupling.row_vector(a);
    Rational d;
    for (const auto& x : w) d += x;
    wt.weighted.push_back(d.inverse() * w);
    wt.dual.push_back(std::move(w));
    wt.d.push_back(d);
  }
  return wt;
}

bool check_2d_identity(const RootSystem& rs, const WeightTable& wt, int alpha) {
  rs.check_root(alpha);
  const auto a = static_cast<std::size_t>(alpha);
  return dot(rs.gramm().row(a), wt.d) == Rational(1);
}

bool connected_to(const RootSystem& rs, int alpha, RootSet target) {
  return !(rs.component_of(alpha) & target).empty();
}

ParabolicCharacter parabolic_character(const RootSystem& rs, const WeightTable& wt, int alpha) {
  rs.check_root(alpha);
  const auto n = static_cast<std::size_t>(rs.rank());
  const auto a = static_cast<std::size_t>(alpha);
  ParabolicCharacter pc;
  pc.root_sum.assign(n, 0);
  for (const auto& r : rs.positive_roots())
    if (r[a] > 0)
      for (std::size_t i = 0; i < n; ++i) pc.root_sum[i] += r[i];
  const QVector& w = wt.dual[a];
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i].is_zero()) {
      if (pc.root_sum[i] != 0) throw NotProportional("support differs at coordinate " + std::to_string(i + 1));
      continue;
    }
    const Rational r = Rational(pc.root_sum[i]) / w[i];
    if (lambda && *lambda != r) throw NotProportional("ratios " + lambda->to_string() + " and " + r.to_string());
    lambda = r;
  }
  if (!lambda || lambda->sign() <= 0) throw NotProportional("no positive ratio");
  pc.lambda = *lambda;
  return pc;
}

}  // namespace dw
