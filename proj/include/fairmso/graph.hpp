#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairmso {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  // Duplicate edges are merged; self-loops and out-of-range ids throw DomainError.
  Graph(int n, std::span<const Edge> edges);

  int size() const { return n_; }
  int edge_count() const { return m_; }
  bool adjacent(Vertex u, Vertex v) const { return matrix_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  std::vector<Edge> edges() const;

  // Subgraph induced by `keep`; vertex keep[i] becomes i.
  Graph induced(std::span<const Vertex> keep) const;

  bool operator==(const Graph& other) const { return n_ == other.n_ && matrix_ == other.matrix_; }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<char> matrix_;
};

// Membership indicator over a fixed universe 0..n-1.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int universe) : bits_(universe, 0) {}
  static VertexSet from_list(int universe, std::span<const Vertex> members);
  static VertexSet from_mask(int universe, std::uint64_t mask);

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(Vertex v) const { return bits_[v] != 0; }
  void insert(Vertex v);
  void erase(Vertex v);
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::vector<Vertex> members() const;
  bool is_subset_of(const VertexSet& other) const;

  bool operator==(const VertexSet& other) const { return bits_ == other.bits_; }

 private:
  std::vector<char> bits_;
  int count_ = 0;
};

// Bit i set iff adjacent to the i-th modulator vertex.
struct NeighborhoodType {
  std::uint32_t bits = 0;
  int width = 0;

  bool test(int i) const { return (bits >> i) & 1u; }
  std::string to_string() const;
  bool operator==(const NeighborhoodType&) const = default;
};

// Per-neighborhood-type counts, indexed by the type's bit pattern (size 2^d).
using CountVector = std::vector<int>;
using CliqueSignature = CountVector;

// Graph plus a cluster-vertex-deletion set D and the cliques of G - D.
class ModulatedGraph {
 public:
  ModulatedGraph() = default;

  const Graph& graph() const { return graph_; }
  std::span<const Vertex> modulator() const { return modulator_; }
  int modulator_size() const { return static_cast<int>(modulator_.size()); }
  int type_count() const { return 1 << modulator_size(); }
  // Cliques ordered by smallest vertex; members ascending.
  const std::vector<std::vector<Vertex>>& cliques() const { return cliques_; }
  // -1 for modulator vertices
  int clique_of(Vertex v) const { return clique_of_[v]; }
  // -1 for vertices outside the modulator
  int modulator_index(Vertex v) const { return modulator_index_[v]; }
  bool in_modulator(Vertex v) const { return modulator_index_[v] >= 0; }
  std::uint32_t type_bits(Vertex v) const { return type_bits_[v]; }
  // Members of clique c whose neighborhood type is `bits`, ascending.
  std::vector<Vertex> part(int clique, std::uint32_t bits) const;
  // Modulator-internal graph (vertex i = modulator()[i]).
  Graph modulator_subgraph() const;

 private:
  friend ModulatedGraph validate_modulator(const Graph&, std::span<const Vertex>);
  Graph graph_;
  std::vector<Vertex> modulator_;
  std::vector<std::vector<Vertex>> cliques_;
  std::vector<int> clique_of_;
  std::vector<int> modulator_index_;
  std::vector<std::uint32_t> type_bits_;
};

struct GraphDocument {
  Graph graph;
  std::optional<std::vector<Vertex>> modulator;
};

// Edge-list format: "n m", m lines "u v", optional trailing "modulator: i1 i2 ...".
GraphDocument parse_graph_document(std::string_view text);
Graph load_graph(std::string_view text);
GraphDocument read_graph_file(const std::string& path);
std::string format_graph(const Graph& g, std::span<const Vertex> modulator = {});

// Largest modulator this library handles (2^d neighborhood types are materialized).
inline constexpr int kMaxModulatorSize = 12;

// Throws ModulatorError naming a non-edge when G - D is not a disjoint union of cliques.
ModulatedGraph validate_modulator(const Graph& g, std::span<const Vertex> modulator);

NeighborhoodType neighborhood_type(const ModulatedGraph& mg, Vertex v);

// min(|C_nT|, cap) for every type of the given clique.
CliqueSignature truncated_signature(const ModulatedGraph& mg, int clique, int cap);

// max over all v of |N(v) ∩ X|, open neighborhoods.
int fair_cost(const Graph& g, const VertexSet& x);

}  // namespace fairmso
