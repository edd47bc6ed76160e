#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualweight/matrix.hpp"

namespace dw {

/// One irreducible factor, e.g. {'E', 8}.
struct ComponentSpec {
  char type = 'A';
  int rank = 1;
  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

/// Orthogonal direct sum of irreducible factors, in order.
using SystemSpec = std::vector<ComponentSpec>;

/// Parses "A3", "B2xA1", "G2+A2", ... Throws ParseError with the offending position.
SystemSpec parse_system_spec(std::string_view text);
std::string to_string(const ComponentSpec& c);
std::string to_string(const SystemSpec& s);

/// Throws InvalidRank unless A>=1, B>=2, C>=2, D>=3, E in {6,7,8}, F=4, G=2.
void validate(const ComponentSpec& c);

/// Gramm matrix of the simple roots in Bourbaki numbering and normalization
/// (simply-laced and long roots of B/C/F squared length 2, except C where the
/// last root is 2e_n, and G2 short root squared length 2).
QMatrix bourbaki_gramm(const ComponentSpec& c);

/// Integer Cartan matrix 2(a_i,a_j)/(a_j,a_j); throws InvalidGramm when some
/// entry is not an integer.
std::vector<std::vector<int>> cartan_matrix(const QMatrix& gramm);

/// Irreducible types of the given rank, one representative per isomorphism
/// class (D3 is A3, so D starts at 4; B2 and C2 coincide so C starts at 3).
std::vector<ComponentSpec> catalogue(int rank);

struct Classification {
  ComponentSpec type;
  /// position in the catalogue numbering -> index into the classified matrix
  std::vector<std::size_t> relabel;
  /// The classified Gramm equals scale * (catalogue Gramm) after relabelling.
  Rational scale;
};

/// Matches a connected Gramm matrix against the finite-type catalogue under
/// simultaneous reindexing and one positive rescaling. Empty when nothing matches.
std::optional<Classification> classify_connected(const QMatrix& gramm);

/// Connected components of the graph with an edge wherever gramm(i,j) != 0,
/// each sorted, ordered by smallest member.
std::vector<std::vector<std::size_t>> graph_components(const QMatrix& gramm);

}  // namespace dw
