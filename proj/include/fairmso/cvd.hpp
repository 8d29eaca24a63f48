#pragma once

#include <optional>
#include <vector>

#include "fairmso/graph.hpp"

namespace fairmso {

struct CvdResult {
  std::vector<Vertex> modulator;  // ascending
  int budget_used = 0;
};

// Induced-P3 branching, 3^k leaves. Deterministic.
std::optional<CvdResult> find_modulator_exact(const Graph& g, int k);

// Smallest modulator via iterative deepening on k.
CvdResult find_modulator_min(const Graph& g);

}  // namespace fairmso
