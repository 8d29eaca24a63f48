#include "fairmso/cvd.hpp"

#include <algorithm>
#include <array>

namespace fairmso {

namespace {

// First induced path u-v-w: middle v ascending, then u < w ascending.
bool find_p3(const Graph& g, const std::vector<char>& removed, std::array<Vertex, 3>& out) {
  for (Vertex v = 0; v < g.size(); ++v) {
    if (removed[v]) continue;
    auto nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (removed[nb[i]]) continue;
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (removed[nb[j]]) continue;
        if (!g.adjacent(nb[i], nb[j])) {
          out = {v, nb[i], nb[j]};
          return true;
        }
      }
    }
  }
  return false;
}

bool branch(const Graph& g, std::vector<char>& removed, int budget) {
  std::array<Vertex, 3> p3{};
  if (!find_p3(g, removed, p3)) return true;
  if (budget == 0) return false;
  for (Vertex x : p3) {
    removed[x] = 1;
    if (branch(g, removed, budget - 1)) return true;
    removed[x] = 0;
  }
  return false;
}

}  // namespace

std::optional<CvdResult> find_modulator_exact(const Graph& g, int k) {
  if (k < 0) return std::nullopt;
  std::vector<char> removed(g.size(), 0);
  if (!branch(g, removed, k)) return std::nullopt;
  CvdResult r;
  for (Vertex v = 0; v < g.size(); ++v)
    if (removed[v]) r.modulator.push_back(v);
  r.budget_used = static_cast<int>(r.modulator.size());
  return r;
}

CvdResult find_modulator_min(const Graph& g) {
  for (int k = 0;; ++k)
    if (auto r = find_modulator_exact(g, k)) return *r;
}

}  // namespace fairmso
