#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/graph.hpp"

namespace fairmso {

struct BinPackingInstance {
  std::vector<int> sizes;
  int bins = 1;
  int capacity = 0;
};

struct DTupleInstance {
  std::vector<std::vector<int>> tuples;
  int d = 1;
  int budget = 0;
};

// "l B" then one size per line.
BinPackingInstance parse_binpack(std::string_view text);
// "d b" then one tuple (d integers) per line.
DTupleInstance parse_dtuple(std::string_view text);

DTupleInstance binpack_to_dtuple(const BinPackingInstance& bp);

struct HardInstance {
  Graph graph;
  // Free is the deleted set
  Formula formula;
  // the same property stated over the surviving graph G - X
  std::string deletion_form;
  int k = 0;
  std::vector<Vertex> modulator;
  std::vector<std::vector<int>> kept_tuples;
  int dropped_tuples = 0;
  // added after the cliques when d >= 2 and fewer than three tuples survive
  int pendants_per_modulator_vertex = 0;
  std::vector<std::string> warnings;
};

HardInstance dtuple_to_fairfo(const DTupleInstance& dt);

// Holds iff Free is exactly the set of vertices with three pairwise distinct,
// pairwise non-adjacent neighbors (the modul(x) test of the reduction).
Formula modul_characterization();

bool binpack_feasible(const BinPackingInstance& bp);
bool dtuple_feasible(const DTupleInstance& dt);

// Sidecar metadata: source instance(s), kept tuples, expected answer when brute-forcible.
std::string hard_meta_json(const HardInstance& inst, const DTupleInstance& dt, const BinPackingInstance* bp = nullptr);

// Writes PREFIX.graph, PREFIX.mso and PREFIX.meta (JSON).
void write_hard_instance(const std::string& prefix, const HardInstance& inst, const std::string& meta_json);

}  // namespace fairmso
