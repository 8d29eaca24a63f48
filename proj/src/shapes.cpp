#include "fairmso/shapes.hpp"

#include <algorithm>
#include <sstream>

#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"

namespace fairmso {

namespace {

void require_odd(int alpha) {
  if (alpha < 1 || alpha % 2 == 0) throw DomainError("alpha must be a positive odd integer, got " + std::to_string(alpha));
}

struct PartCount {
  int in = 0;
  int out = 0;
};

// Per type counts of selected / unselected vertices of one clique.
std::vector<PartCount> part_counts(const ModulatedGraph& mg, int clique, const VertexSet& x) {
  std::vector<PartCount> pc(mg.type_count());
  for (Vertex v : mg.cliques()[clique]) {
    auto& p = pc[mg.type_bits(v)];
    (x.contains(v) ? p.in : p.out)++;
  }
  return pc;
}

bool part_compliant(const PartCount& p, int alpha) { return 2 * p.in <= alpha || 2 * p.out <= alpha; }

void require_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha) {
  if (!is_compliant(mg, x, alpha)) throw DomainError("set is not " + std::to_string(alpha) + "-compliant");
}

}  // namespace

TripleClass classify(std::uint32_t nt, const ColumnType& ct, const Pattern& sp, int alpha) {
  require_odd(alpha);
  if (ct[nt] <= alpha) return TripleClass::Bounded;
  return 2 * sp[nt] < alpha ? TripleClass::Thin : TripleClass::Fat;
}

int matched_count(int part_size, int ct_entry, int sp_entry, int alpha) {
  if (ct_entry <= alpha || 2 * sp_entry < alpha) return sp_entry;
  return part_size - (alpha - sp_entry);
}

std::vector<Pattern> admissible_patterns(const ColumnType& ct, int alpha, const PatternFilter& filter) {
  require_odd(alpha);
  // per-entry value ranges, then their cartesian product in lexicographic order
  std::vector<std::vector<int>> choices(ct.size());
  for (std::size_t t = 0; t < ct.size(); ++t) {
    const bool bounded = ct[t] <= alpha;
    const int top = bounded ? ct[t] : alpha;
    for (int v = 0; v <= top; ++v) {
      if (ct[t] > 0 && filter.kind == PatternFilter::Kind::Thin && v > filter.c) continue;
      if (ct[t] > 0 && filter.kind == PatternFilter::Kind::Fat && (bounded ? ct[t] - v : alpha - v) > filter.c) continue;
      choices[t].push_back(v);
    }
    if (choices[t].empty()) return {};
  }
  std::vector<Pattern> out;
  Pattern cur(ct.size(), 0);
  std::vector<std::size_t> idx(ct.size(), 0);
  for (std::size_t t = 0; t < ct.size(); ++t) cur[t] = choices[t][0];
  while (true) {
    out.push_back(cur);
    int t = static_cast<int>(ct.size()) - 1;
    while (t >= 0 && idx[t] + 1 == choices[t].size()) {
      idx[t] = 0;
      cur[t] = choices[t][0];
      --t;
    }
    if (t < 0) break;
    cur[t] = choices[t][++idx[t]];
  }
  return out;
}

bool is_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha) {
  require_odd(alpha);
  for (int c = 0; c < static_cast<int>(mg.cliques().size()); ++c)
    for (const auto& p : part_counts(mg, c, x))
      if (!part_compliant(p, alpha)) return false;
  return true;
}

VertexSet make_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha) {
  require_odd(alpha);
  VertexSet out = x;
  for (int c = 0; c < static_cast<int>(mg.cliques().size()); ++c) {
    auto pc = part_counts(mg, c, x);
    for (std::uint32_t t = 0; t < pc.size(); ++t) {
      if (part_compliant(pc[t], alpha)) continue;
      auto part = mg.part(c, t);
      for (Vertex q : select_Q(part, x, alpha)) out.erase(q);
    }
  }
  return out;
}

CompliantResult make_compliant(const ModulatedGraph& mg, const VertexSet& x, int alpha, const Formula& phi) {
  CompliantResult r{make_compliant(mg, x, alpha), false};
  r.formula_preserved = evaluate(mg.graph(), r.set, phi);
  return r;
}

ReducedInstance trim(const ModulatedGraph& mg, const VertexSet& x, int alpha) {
  require_compliant(mg, x, alpha);
  std::vector<Vertex> gone;
  for (int c = 0; c < static_cast<int>(mg.cliques().size()); ++c) {
    for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(mg.type_count()); ++t) {
      auto part = mg.part(c, t);
      if (static_cast<int>(part.size()) <= alpha) continue;
      std::vector<Vertex> in_x, out_x;
      for (Vertex v : part) (x.contains(v) ? in_x : out_x).push_back(v);
      const int n_out = static_cast<int>(out_x.size());
      const int n_in = static_cast<int>(in_x.size());
      // fat parts keep every unselected vertex, thin parts every selected one
      int keep_in = 2 * n_out < alpha ? alpha + 1 - n_out : std::min(n_in, alpha / 2);
      int keep_out = alpha + 1 - keep_in;
      gone.insert(gone.end(), in_x.begin() + keep_in, in_x.end());
      gone.insert(gone.end(), out_x.begin() + keep_out, out_x.end());
    }
  }
  return delete_vertices(mg, x, gone);
}

ColumnType column_type(const ModulatedGraph& mg, int clique, int alpha) {
  return truncated_signature(mg, clique, alpha + 1);
}

Pattern clique_pattern(const ModulatedGraph& mg, int clique, const VertexSet& x, int alpha) {
  auto pc = part_counts(mg, clique, x);
  Pattern sp(pc.size(), 0);
  for (std::size_t t = 0; t < pc.size(); ++t) {
    const auto& p = pc[t];
    if (!part_compliant(p, alpha)) throw DomainError("set is not " + std::to_string(alpha) + "-compliant");
    const int size = p.in + p.out;
    if (size <= alpha || 2 * p.in < alpha)
      sp[t] = p.in;
    else
      sp[t] = alpha - p.out;
  }
  return sp;
}

Shape compute_shape(const ModulatedGraph& mg, const VertexSet& x, int alpha, long long gamma) {
  require_odd(alpha);
  if (gamma < 1) throw DomainError("gamma must be at least 1");
  Shape shp;
  shp.width = mg.modulator_size();
  for (int i = 0; i < shp.width; ++i)
    if (x.contains(mg.modulator()[i])) shp.nt_star |= 1u << i;
  for (int c = 0; c < static_cast<int>(mg.cliques().size()); ++c) {
    auto& cell = shp.m[{column_type(mg, c, alpha), clique_pattern(mg, c, x, alpha)}];
    cell = std::min(gamma, cell + 1);
  }
  return shp;
}

bool is_coherent(const Shape& shp, int alpha) {
  require_odd(alpha);
  // (column, type) -> bit 0 thin seen, bit 1 fat seen
  std::map<std::pair<ColumnType, std::uint32_t>, int> seen;
  for (const auto& [key, count] : shp.m) {
    if (count <= 0) continue;
    const auto& [ct, sp] = key;
    for (std::uint32_t t = 0; t < ct.size(); ++t) {
      auto cls = classify(t, ct, sp, alpha);
      if (cls == TripleClass::Bounded) continue;
      int& s = seen[{ct, t}];
      s |= cls == TripleClass::Thin ? 1 : 2;
      if (s == 3) return false;
    }
  }
  return true;
}

AssociatedInstance associated_instance(const Shape& shp, const Graph& modulator_subgraph, int alpha) {
  require_odd(alpha);
  const int d = shp.width;
  if (modulator_subgraph.size() != d) throw DomainError("modulator subgraph does not match shape width");
  const std::size_t types = std::size_t{1} << d;

  std::vector<Edge> edges = modulator_subgraph.edges();
  std::vector<Vertex> selected;
  for (int i = 0; i < d; ++i)
    if ((shp.nt_star >> i) & 1u) selected.push_back(i);

  int next = d;
  for (const auto& [key, count] : shp.m) {
    const auto& [ct, sp] = key;
    if (ct.size() != types || sp.size() != types) throw DomainError("shape entry has wrong type width");
    for (std::size_t t = 0; t < types; ++t) {
      if (ct[t] < 0 || ct[t] > alpha + 1 || sp[t] < 0 || sp[t] > alpha)
        throw DomainError("shape entry out of range: cT=" + vector_text(ct) + " sP=" + vector_text(sp));
      if (ct[t] <= alpha && sp[t] > ct[t])
        throw DomainError("shape violates sP[nT] <= cT[nT]: cT=" + vector_text(ct) + " sP=" + vector_text(sp));
    }
    for (long long copy = 0; copy < count; ++copy) {
      const int first = next;
      for (std::uint32_t t = 0; t < types; ++t) {
        const int take = matched_count(ct[t], ct[t], sp[t], alpha);
        for (int j = 0; j < ct[t]; ++j) {
          const int v = next++;
          for (int i = 0; i < d; ++i)
            if ((t >> i) & 1u) edges.emplace_back(i, v);
          if (j < take) selected.push_back(v);
        }
      }
      for (int u = first; u < next; ++u)
        for (int w = u + 1; w < next; ++w) edges.emplace_back(u, w);
    }
  }

  AssociatedInstance out{Graph(next, edges), VertexSet::from_list(next, selected), {}};
  for (int i = 0; i < d; ++i) out.modulator.push_back(i);
  return out;
}

bool evaluate_shape(const Shape& shp, const Formula& phi, const Graph& modulator_subgraph, int alpha) {
  auto inst = associated_instance(shp, modulator_subgraph, alpha);
  return evaluate(inst.graph, inst.set, phi);
}

std::string vector_text(const std::vector<int>& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

std::string shape_text(const Shape& shp) {
  std::ostringstream out;
  out << "nT*: " << NeighborhoodType{shp.nt_star, shp.width}.to_string() << '\n';
  for (const auto& [key, count] : shp.m)
    if (count > 0) out << "cT=" << vector_text(key.first) << " sP=" << vector_text(key.second) << " count=" << count << '\n';
  return out.str();
}

}  // namespace fairmso
