#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fairmso/graph.hpp"

namespace fairmso {

// Picks Q ⊆ T with |T \ Q| = tau so that (T \ Q) ∩ X keeps |X∩T| when that is at most
// tau/2, floor(tau/2) in the middle range, and tau - |T \ X| near the top.
// Lowest-numbered vertices go into Q first. Throws DomainError when |T| < tau.
std::vector<Vertex> select_Q(std::span<const Vertex> twin_class, const VertexSet& x, int tau);

struct ReducedInstance {
  ModulatedGraph mg;
  VertexSet set;
  // original vertex id of each reduced-graph vertex
  std::vector<Vertex> original;
};

struct IrrelevantCliqueRemoval {
  ReducedInstance reduced;
  int removed_clique = -1;
};

// Removes one clique whose labeled clique type occurs more than gamma times.
std::optional<IrrelevantCliqueRemoval> remove_irrelevant_clique(const ModulatedGraph& mg, const VertexSet& x,
                                                                long long gamma);

// Graph with the given vertices deleted, modulator order preserved.
ReducedInstance delete_vertices(const ModulatedGraph& mg, const VertexSet& x, std::span<const Vertex> gone);

}  // namespace fairmso
