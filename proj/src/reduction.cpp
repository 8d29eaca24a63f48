#include "fairmso/reduction.hpp"

#include <algorithm>
#include <map>

#include "fairmso/error.hpp"

namespace fairmso {

std::vector<Vertex> select_Q(std::span<const Vertex> twin_class, const VertexSet& x, int tau) {
  const int size = static_cast<int>(twin_class.size());
  if (tau < 0 || size < tau)
    throw DomainError("twin class of size " + std::to_string(size) + " is smaller than tau=" + std::to_string(tau));
  std::vector<Vertex> in_x, out_x;
  for (Vertex v : twin_class) (x.contains(v) ? in_x : out_x).push_back(v);
  std::sort(in_x.begin(), in_x.end());
  std::sort(out_x.begin(), out_x.end());
  const int a = static_cast<int>(in_x.size());
  const int b = static_cast<int>(out_x.size());

  int keep_in;
  if (2 * a <= tau)
    keep_in = a;
  else if (2 * b >= tau)
    keep_in = tau / 2;
  else
    keep_in = tau - b;
  const int keep_out = tau - keep_in;

  std::vector<Vertex> q(in_x.begin(), in_x.begin() + (a - keep_in));
  q.insert(q.end(), out_x.begin(), out_x.begin() + (b - keep_out));
  std::sort(q.begin(), q.end());
  return q;
}

ReducedInstance delete_vertices(const ModulatedGraph& mg, const VertexSet& x, std::span<const Vertex> gone) {
  const Graph& g = mg.graph();
  std::vector<char> drop(g.size(), 0);
  for (Vertex v : gone) {
    if (mg.in_modulator(v)) throw DomainError("cannot delete modulator vertex " + std::to_string(v));
    drop[v] = 1;
  }
  ReducedInstance out;
  std::vector<int> pos(g.size(), -1);
  for (Vertex v = 0; v < g.size(); ++v)
    if (!drop[v]) {
      pos[v] = static_cast<int>(out.original.size());
      out.original.push_back(v);
    }
  Graph h = g.induced(out.original);
  std::vector<Vertex> d;
  for (Vertex v : mg.modulator()) d.push_back(pos[v]);
  out.mg = validate_modulator(h, d);
  out.set = VertexSet(h.size());
  for (std::size_t i = 0; i < out.original.size(); ++i)
    if (x.contains(out.original[i])) out.set.insert(static_cast<Vertex>(i));
  return out;
}

std::optional<IrrelevantCliqueRemoval> remove_irrelevant_clique(const ModulatedGraph& mg, const VertexSet& x,
                                                                long long gamma) {
  if (gamma < 1) throw DomainError("gamma must be at least 1");
  // Two cliques are label-isomorphic iff they agree on (|C_nT ∩ X|, |C_nT \ X|) for every type.
  std::map<std::vector<int>, std::vector<int>> by_key;
  const int types = mg.type_count();
  for (int c = 0; c < static_cast<int>(mg.cliques().size()); ++c) {
    std::vector<int> key(2 * types, 0);
    for (Vertex v : mg.cliques()[c]) ++key[2 * mg.type_bits(v) + (x.contains(v) ? 0 : 1)];
    by_key[key].push_back(c);
  }
  for (const auto& [key, ids] : by_key) {
    if (static_cast<long long>(ids.size()) <= gamma) continue;
    const int victim = ids.back();
    IrrelevantCliqueRemoval r;
    r.reduced = delete_vertices(mg, x, mg.cliques()[victim]);
    r.removed_clique = victim;
    return r;
  }
  return std::nullopt;
}

}  // namespace fairmso
