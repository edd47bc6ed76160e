#include "dualweight/dynkin.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "dualweight/errors.hpp"

namespace dw {

SystemSpec parse_system_spec(std::string_view text) {
  SystemSpec out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError(what, pos); };
  if (text.empty()) fail("empty system spec");
  while (true) {
    if (pos >= text.size()) fail("expected a type letter");
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    if (letter < 'A' || letter > 'G') fail(std::string("unknown type letter '") + text[pos] + "'");
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits_start) fail("expected a rank after the type letter");
    if (pos - digits_start > 3) {
      pos = digits_start;
      fail("rank too large");
    }
    const int rank = std::stoi(std::string(text.substr(digits_start, pos - digits_start)));
    out.push_back({letter, rank});
    if (pos == text.size()) break;
    if (text[pos] != 'x' && text[pos] != 'X' && text[pos] != '+') {
      fail(std::string("expected 'x' or '+' between components, got '") + text[pos] + "'");
    }
    ++pos;
  }
  return out;
}

std::string to_string(const ComponentSpec& c) { return std::string(1, c.type) + std::to_string(c.rank); }

std::string to_string(const SystemSpec& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "x";
    out += to_string(s[i]);
  }
  return out;
}

void validate(const ComponentSpec& c) {
  bool ok = false;
  switch (c.type) {
    case 'A': ok = c.rank >= 1; break;
    case 'B':
    case 'C': ok = c.rank >= 2; break;
    case 'D': ok = c.rank >= 3; break;
    case 'E': ok = c.rank >= 6 && c.rank <= 8; break;
    case 'F': ok = c.rank == 4; break;
    case 'G': ok = c.rank == 2; break;
    default: break;
  }
  if (!ok) throw InvalidRank(to_string(c) + " is not a valid type and rank");
}

QMatrix bourbaki_gramm(const ComponentSpec& c) {
  validate(c);
  const auto n = static_cast<std::size_t>(c.rank);
  QMatrix g(n, n);
  auto link = [&g](std::size_t i, std::size_t j, const Rational& v) {
    g(i, j) = v;
    g(j, i) = v;
  };
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  switch (c.type) {
    case 'A':
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      g(n - 1, n - 1) = 1;
      break;
    case 'C':
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n - 1, -2);
      g(n - 1, n - 1) = 4;
      break;
    case 'D':
      for (std::size_t i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'E':
      link(0, 2, -1);
      link(1, 3, -1);
      for (std::size_t i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      g(2, 2) = 1;
      g(3, 3) = 1;
      break;
    case 'G':
      link(0, 1, -3);
      g(1, 1) = 6;
      break;
    default: break;
  }
  return g;
}

std::vector<std::vector<int>> cartan_matrix(const QMatrix& gramm) {
  const std::size_t n = gramm.rows();
  std::vector<std::vector<int>> c(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (gramm(j, j).sign() <= 0) throw InvalidGramm("non-positive diagonal");
      const Rational v = Rational(2) * gramm(i, j) / gramm(j, j);
      if (!v.is_integer() || v.numerator().fits_sint_p() == 0) {
        throw InvalidGramm("non-integral Cartan entry " + v.to_string());
      }
      c[i][j] = static_cast<int>(v.numerator().get_si());
    }
  return c;
}

std::vector<ComponentSpec> catalogue(int rank) {
  std::vector<ComponentSpec> out;
  if (rank < 1) return out;
  out.push_back({'A', rank});
  if (rank >= 2) out.push_back({'B', rank});
  if (rank >= 3) out.push_back({'C', rank});
  if (rank >= 4) out.push_back({'D', rank});
  if (rank >= 6 && rank <= 8) out.push_back({'E', rank});
  if (rank == 4) out.push_back({'F', 4});
  if (rank == 2) out.push_back({'G', 2});
  return out;
}

namespace {

using IntMatrix = std::vector<std::vector<int>>;

// Catalogue vertex order: breadth-first from vertex 0, so every vertex after
// the first has an already-placed neighbour to constrain its image.
std::vector<std::size_t> bfs_order(const IntMatrix& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> order{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (std::size_t j = 0; j < n; ++j)
      if (!seen[j] && c[order[head]][j] != 0) {
        seen[j] = true;
        order.push_back(j);
      }
  return order;
}

bool match(const IntMatrix& target, const IntMatrix& input, std::vector<std::size_t>& image) {
  const std::size_t n = target.size();
  const auto order = bfs_order(target);
  if (order.size() != n) return false;
  std::vector<bool> used(n, false);
  image.assign(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t t = order[depth];
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t s = order[d];
        ok = input[v][image[s]] == target[t][s] && input[image[s]][v] == target[s][t];
      }
      if (!ok) continue;
      used[v] = true;
      image[t] = v;
      if (place(depth + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  return place(0);
}

}  // namespace

std::optional<Classification> classify_connected(const QMatrix& gramm) {
  if (!gramm.square() || gramm.rows() == 0) return std::nullopt;
  if (graph_components(gramm).size() != 1) return std::nullopt;
  IntMatrix input;
  try {
    input = cartan_matrix(gramm);
  } catch (const InvalidGramm&) {
    return std::nullopt;
  }
  const int rank = static_cast<int>(gramm.rows());
  for (const auto& spec : catalogue(rank)) {
    const QMatrix cat = bourbaki_gramm(spec);
    std::vector<std::size_t> image;
    if (!match(cartan_matrix(cat), input, image)) continue;
    const Rational scale = gramm(image[0], image[0]) / cat(0, 0);
    bool same = scale.sign() > 0;
    for (std::size_t i = 0; i < cat.rows() && same; ++i)
      for (std::size_t j = 0; j < cat.cols() && same; ++j)
        same = gramm(image[i], image[j]) == scale * cat(i, j);
    if (same) return Classification{spec, image, scale};
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> graph_components(const QMatrix& gramm) {
  const std::size_t n = gramm.rows();
  std::vector<int> label(n, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> comp{s};
    label[s] = static_cast<int>(comps.size());
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (std::size_t j = 0; j < n; ++j)
        if (label[j] < 0 && j != comp[head] && !gramm(comp[head], j).is_zero()) {
          label[j] = label[s];
          comp.push_back(j);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

}  // namespace dw
