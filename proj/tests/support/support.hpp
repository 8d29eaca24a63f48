#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fairmso/graph.hpp"
#include "fairmso/presets.hpp"

namespace fairmso::testing {

using Rng = std::mt19937_64;

Graph make_graph(int n, std::vector<std::pair<int, int>> edges);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);

// Every graph on 1..max_n (<= 7) vertices up to isomorphism.
std::vector<Graph> atlas_graphs(int max_n);
// Every labeled graph on n vertices; n <= 6.
std::vector<Graph> all_labeled_graphs(int n);

int uniform(Rng& rng, int lo, int hi);
Graph random_graph(int n, double p, Rng& rng);
bool is_connected(const Graph& g);

struct ModInstance {
  Graph graph;
  std::vector<Vertex> modulator;
};

// Random cliques plus d modulator vertices with random attachments; modulator is valid by construction.
ModInstance random_modulated(int n, int d, Rng& rng, double p_attach = 0.5, double p_inner = 0.5);

VertexSet mask_set(int n, std::uint64_t mask);

// Direct combinatorial checkers, independent of the formula machinery.
int bf_fair_cost(const Graph& g, const VertexSet& x);
bool bf_vertex_cover(const Graph& g, const VertexSet& x);
bool bf_forest_after_deleting(const Graph& g, const VertexSet& x);
bool bf_bipartite_after_deleting(const Graph& g, const VertexSet& x);
bool bf_dominating(const Graph& g, const VertexSet& x);
bool bf_sigma_rho(const Graph& g, const VertexSet& x, const CountSet& sigma, const CountSet& rho);
bool bf_problem(const Graph& g, const VertexSet& x, const Problem& p);

// Minimum fair cost over all subsets satisfying pred.
std::optional<int> bf_min_fair(const Graph& g, const std::function<bool(const VertexSet&)>& pred);

bool is_cluster_graph(const Graph& g, const VertexSet& removed);
int bf_cvd_min(const Graph& g);

std::string data_path(const std::string& name);

// Ten first-order formulas with at most two vertex quantifiers.
const std::vector<std::string>& fo_corpus();

}  // namespace fairmso::testing
