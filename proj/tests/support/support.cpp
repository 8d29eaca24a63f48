#include "support.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fairmso::testing {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  std::vector<Edge> es(edges.begin(), edges.end());
  return Graph(n, es);
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make_graph(leaves + 1, e);
}

std::string data_path(const std::string& name) { return std::string(FAIRMSO_TEST_DATA) + "/" + name; }

std::vector<Graph> atlas_graphs(int max_n) {
  std::ifstream in(data_path("atlas7.txt"));
  if (!in) throw std::runtime_error("missing atlas7.txt");
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    int n = 0;
    ss >> n;
    if (n > max_n) continue;
    std::vector<std::pair<int, int>> e;
    std::string tok;
    while (ss >> tok) {
      auto comma = tok.find(',');
      e.emplace_back(std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1)));
    }
    out.push_back(make_graph(n, e));
  }
  return out;
}

std::vector<Graph> all_labeled_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::vector<Graph> out;
  for (std::uint64_t mask = 0; mask < (1ULL << slots.size()); ++mask) {
    std::vector<std::pair<int, int>> e;
    for (std::size_t b = 0; b < slots.size(); ++b)
      if ((mask >> b) & 1) e.push_back(slots[b]);
    out.push_back(make_graph(n, e));
  }
  return out;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

static bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Graph random_graph(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng, p)) e.emplace_back(i, j);
  return make_graph(n, e);
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v))
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

ModInstance random_modulated(int n, int d, Rng& rng, double p_attach, double p_inner) {
  d = std::min(d, n);
  // vertex ids are shuffled so the modulator is not always a prefix
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (coin(rng, p_inner)) e.emplace_back(perm[i], perm[j]);
  int v = d;
  while (v < n) {
    int size = uniform(rng, 1, std::min(4, n - v));
    for (int a = v; a < v + size; ++a) {
      for (int b = a + 1; b < v + size; ++b) e.emplace_back(perm[a], perm[b]);
      for (int m = 0; m < d; ++m)
        if (coin(rng, p_attach)) e.emplace_back(perm[a], perm[m]);
    }
    v += size;
  }
  ModInstance out{make_graph(n, e), {}};
  for (int i = 0; i < d; ++i) out.modulator.push_back(perm[i]);
  std::sort(out.modulator.begin(), out.modulator.end());
  return out;
}

VertexSet mask_set(int n, std::uint64_t mask) { return VertexSet::from_mask(n, mask); }

int bf_fair_cost(const Graph& g, const VertexSet& x) {
  std::vector<int> seen(g.size(), 0);
  for (auto [u, v] : g.edges()) {
    if (x.contains(u)) ++seen[v];
    if (x.contains(v)) ++seen[u];
  }
  return seen.empty() ? 0 : *std::max_element(seen.begin(), seen.end());
}

bool bf_vertex_cover(const Graph& g, const VertexSet& x) {
  for (auto [u, v] : g.edges())
    if (!x.contains(u) && !x.contains(v)) return false;
  return true;
}

bool bf_forest_after_deleting(const Graph& g, const VertexSet& x) {
  std::vector<int> parent(g.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  for (auto [u, v] : g.edges()) {
    if (x.contains(u) || x.contains(v)) continue;
    int a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool bf_bipartite_after_deleting(const Graph& g, const VertexSet& x) {
  std::vector<int> color(g.size(), -1);
  for (int s = 0; s < g.size(); ++s) {
    if (x.contains(s) || color[s] >= 0) continue;
    color[s] = 0;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(v)) {
        if (x.contains(u)) continue;
        if (color[u] < 0) {
          color[u] = 1 - color[v];
          stack.push_back(u);
        } else if (color[u] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool bf_dominating(const Graph& g, const VertexSet& x) {
  for (int v = 0; v < g.size(); ++v) {
    if (x.contains(v)) continue;
    bool hit = false;
    for (int u : g.neighbors(v)) hit = hit || x.contains(u);
    if (!hit) return false;
  }
  return true;
}

bool bf_sigma_rho(const Graph& g, const VertexSet& x, const CountSet& sigma, const CountSet& rho) {
  for (int v = 0; v < g.size(); ++v) {
    int c = 0;
    for (int u : g.neighbors(v)) c += x.contains(u) ? 1 : 0;
    if (!(x.contains(v) ? sigma : rho).contains(c)) return false;
  }
  return true;
}

bool bf_problem(const Graph& g, const VertexSet& x, const Problem& p) {
  switch (p.kind) {
    case ProblemKind::VC: return bf_vertex_cover(g, x);
    case ProblemKind::FVS: return bf_forest_after_deleting(g, x);
    case ProblemKind::OCT: return bf_bipartite_after_deleting(g, x);
    case ProblemKind::DS: return bf_dominating(g, x);
    case ProblemKind::SigmaRho: return bf_sigma_rho(g, x, p.sigma, p.rho);
  }
  return false;
}

std::optional<int> bf_min_fair(const Graph& g, const std::function<bool(const VertexSet&)>& pred) {
  std::optional<int> best;
  for (std::uint64_t mask = 0; mask < (1ULL << g.size()); ++mask) {
    VertexSet x = mask_set(g.size(), mask);
    int c = bf_fair_cost(g, x);
    if (best && c >= *best) continue;
    if (pred(x)) best = c;
  }
  return best;
}

bool is_cluster_graph(const Graph& g, const VertexSet& removed) {
  for (int v = 0; v < g.size(); ++v) {
    if (removed.contains(v)) continue;
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!removed.contains(nb[i]) && !removed.contains(nb[j]) && !g.adjacent(nb[i], nb[j])) return false;
  }
  return true;
}

int bf_cvd_min(const Graph& g) {
  const int n = g.size();
  for (int c = 0; c < n; ++c) {
    // subsets of size c in increasing order (Gosper's hack)
    std::uint64_t mask = (1ULL << c) - 1;
    while (mask < (1ULL << n)) {
      if (is_cluster_graph(g, mask_set(n, mask))) return c;
      if (mask == 0) break;
      const std::uint64_t low = mask & -mask, ripple = mask + low;
      mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
  }
  return n;
}

const std::vector<std::string>& fo_corpus() {
  static const std::vector<std::string> corpus{
      "(forallV x (in x Free))",
      "(existsV x (in x Free))",
      "(forallV x (forallV y (implies (and (not (in x Free)) (not (in y Free))) (not (adj x y)))))",
      "(forallV v (implies (not (in v Free)) (existsV u (and (adj u v) (in u Free)))))",
      "(existsV x (and (in x Free) (forallV y (implies (adj x y) (in y Free)))))",
      "(forallV x (implies (in x Free) (existsV y (and (adj x y) (not (in y Free))))))",
      "(existsV x (existsV y (and (adj x y) (and (in x Free) (in y Free)))))",
      "(forallV x (or (in x Free) (existsV y (and (adj x y) (not (in y Free))))))",
      "(not (existsV x (forallV y (or (eq x y) (adj x y)))))",
      "(existsV x (and (not (in x Free)) (forallV y (implies (in y Free) (adj x y)))))",
  };
  return corpus;
}

}  // namespace fairmso::testing
