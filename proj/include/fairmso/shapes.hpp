#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/graph.hpp"
#include "fairmso/reduction.hpp"

namespace fairmso {

// Both indexed by neighborhood-type bits (size 2^d).
// ColumnType entries lie in 0..alpha+1, alpha+1 meaning "more than alpha".
// Pattern entries lie in 0..alpha; entries above alpha/2 mean "all but alpha - entry".
using ColumnType = std::vector<int>;
using Pattern = std::vector<int>;

enum class TripleClass { Bounded, Thin, Fat };

// Pattern restriction from the solution structure of a problem: thin caps
// |X ∩ C_nT| <= c, fat caps |C_nT \ X| <= c.
struct PatternFilter {
  enum class Kind { None, Thin, Fat };
  Kind kind = Kind::None;
  int c = 0;
};

struct Shape {
  std::uint32_t nt_star = 0;
  int width = 0;
  // (column type, pattern) -> number of cliques, saturating at gamma; zero entries omitted
  std::map<std::pair<ColumnType, Pattern>, long long> m;

  bool operator==(const Shape&) const = default;
  bool operator<(const Shape& o) const { return std::tie(nt_star, width, m) < std::tie(o.nt_star, o.width, o.m); }
};

TripleClass classify(std::uint32_t nt, const ColumnType& ct, const Pattern& sp, int alpha);

// Number of vertices of a part of size part_size that a clique matching sp on column entry
// ct_entry selects.
int matched_count(int part_size, int ct_entry, int sp_entry, int alpha);

// Patterns allowed on a column: sP[nT] <= cT[nT] on bounded entries, <= alpha otherwise,
// restricted by the filter. Lexicographic order.
std::vector<Pattern> admissible_patterns(const ColumnType& ct, int alpha, const PatternFilter& filter = {});

bool is_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha);

// Shrinks every violating part to floor(alpha/2) selected vertices.
VertexSet make_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha);

struct CompliantResult {
  VertexSet set;
  bool formula_preserved = false;
};
// As above, and reports whether phi still holds on the result.
CompliantResult make_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha, const Formula& phi);

ReducedInstance trim(const ModulatedGraph& mg, const VertexSet& x, int alpha);

ColumnType column_type(const ModulatedGraph& mg, int clique, int alpha);
// Pattern a compliant set induces on one clique.
Pattern clique_pattern(const ModulatedGraph& mg, int clique, const VertexSet& x, int alpha);

Shape compute_shape(const ModulatedGraph& mg, const VertexSet& x, int alpha, long long gamma);

bool is_coherent(const Shape& shp, int alpha);

struct AssociatedInstance {
  Graph graph;
  VertexSet set;
  std::vector<Vertex> modulator;  // 0..d-1
};

AssociatedInstance associated_instance(const Shape& shp, const Graph& modulator_subgraph, int alpha);

bool evaluate_shape(const Shape& shp, const Formula& phi, const Graph& modulator_subgraph, int alpha);

std::string vector_text(const std::vector<int>& v);
std::string shape_text(const Shape& shp);

}  // namespace fairmso
