#include "fairmso/ilp.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

#include "fairmso/error.hpp"

namespace fairmso {

int IntegerProgram::add_var(std::string name, long long lo, long long hi) {
  vars.push_back({std::move(name), lo, hi});
  return static_cast<int>(vars.size()) - 1;
}

bool IntegerProgram::satisfied_by(const std::vector<long long>& x) const {
  if (x.size() != vars.size()) return false;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (x[i] < vars[i].lo || x[i] > vars[i].hi) return false;
  for (const auto& r : rows) {
    long long s = 0;
    for (const auto& t : r.terms) s += t.coef * x[t.var];
    if (r.sense == Sense::Eq && s != r.rhs) return false;
    if (r.sense == Sense::Le && s > r.rhs) return false;
    if (r.sense == Sense::Ge && s < r.rhs) return false;
  }
  return true;
}

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

struct Domain {
  long long lo;
  long long hi;
};

// Tightens domains against sum(coef * x) <= rhs. False on a proven conflict.
bool tighten_le(const std::vector<LinearTerm>& terms, long long sign, long long rhs, std::vector<Domain>& dom,
                bool& changed) {
  long long min_act = 0;
  for (const auto& t : terms) {
    long long c = sign * t.coef;
    min_act += c > 0 ? c * dom[t.var].lo : c * dom[t.var].hi;
  }
  if (min_act > rhs) return false;
  for (const auto& t : terms) {
    long long c = sign * t.coef;
    if (c == 0) continue;
    auto& d = dom[t.var];
    long long own = c > 0 ? c * d.lo : c * d.hi;
    long long slack = rhs - (min_act - own);
    if (c > 0) {
      long long ub = floor_div(slack, c);
      if (ub < d.hi) {
        d.hi = ub;
        changed = true;
      }
    } else {
      long long lb = ceil_div(slack, c);
      if (lb > d.lo) {
        d.lo = lb;
        changed = true;
      }
    }
    if (d.lo > d.hi) return false;
  }
  return true;
}

bool propagate(const IntegerProgram& ip, std::vector<Domain>& dom) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : ip.rows) {
      if (r.sense != Sense::Ge && !tighten_le(r.terms, 1, r.rhs, dom, changed)) return false;
      if (r.sense != Sense::Le && !tighten_le(r.terms, -1, -r.rhs, dom, changed)) return false;
    }
  }
  return true;
}

bool branch(const IntegerProgram& ip, std::vector<Domain>& dom) {
  if (!propagate(ip, dom)) return false;
  int pick = -1;
  for (int i = 0; i < static_cast<int>(dom.size()); ++i) {
    long long w = dom[i].hi - dom[i].lo;
    if (w > 0 && (pick < 0 || w < dom[pick].hi - dom[pick].lo)) pick = i;
  }
  if (pick < 0) return true;
  const Domain saved = dom[pick];
  for (long long v = saved.lo; v <= saved.hi; ++v) {
    std::vector<Domain> next = dom;
    next[pick] = {v, v};
    if (branch(ip, next)) {
      dom = std::move(next);
      return true;
    }
  }
  return false;
}

std::vector<int> part_sizes(const ModulatedGraph& mg, int clique) {
  std::vector<int> sizes(mg.type_count(), 0);
  for (Vertex v : mg.cliques()[clique]) ++sizes[mg.type_bits(v)];
  return sizes;
}

}  // namespace

std::optional<Assignment> solve_ilp(const IntegerProgram& ip) {
  std::vector<Domain> dom;
  dom.reserve(ip.vars.size());
  for (const auto& v : ip.vars) {
    if (v.lo > v.hi) return std::nullopt;
    dom.push_back({v.lo, v.hi});
  }
  if (!branch(ip, dom)) return std::nullopt;
  Assignment a;
  a.reserve(dom.size());
  for (const auto& d : dom) a.push_back(d.lo);
  if (!ip.satisfied_by(a)) return std::nullopt;
  return a;
}

int clique_fc(const std::vector<int>& part_sizes, const Pattern& sp, std::uint32_t nt_star, int alpha) {
  if (part_sizes.size() != sp.size()) throw DomainError("pattern width does not match clique");
  int selected_total = 0;
  std::vector<int> sel(sp.size(), 0);
  for (std::size_t t = 0; t < sp.size(); ++t) {
    const int size = part_sizes[t];
    const int ct = std::min(size, alpha + 1);
    if (sp[t] < 0 || sp[t] > alpha || (ct <= alpha && sp[t] > ct))
      throw DomainError("pattern " + vector_text(sp) + " is not admissible for the clique");
    sel[t] = matched_count(size, ct, sp[t], alpha);
    selected_total += sel[t];
  }
  int best = 0;
  bool any = false;
  for (std::size_t t = 0; t < sp.size(); ++t) {
    if (part_sizes[t] == 0) continue;
    int delta = std::popcount(static_cast<std::uint32_t>(t) & nt_star) - (sel[t] == part_sizes[t] ? 1 : 0);
    best = any ? std::max(best, delta) : delta;
    any = true;
  }
  return any ? selected_total + best : 0;
}

int clique_fc(const ModulatedGraph& mg, int clique, const Pattern& sp, std::uint32_t nt_star, int alpha) {
  return clique_fc(part_sizes(mg, clique), sp, nt_star, alpha);
}

CliquePartition partition_by_S(const ModulatedGraph& mg, std::uint32_t nt_star, int alpha, int k,
                               const PatternFilter& filter) {
  CliquePartition out;
  const int nc = static_cast<int>(mg.cliques().size());
  std::vector<ColumnType> col_of(nc);
  for (int c = 0; c < nc; ++c) col_of[c] = column_type(mg, c, alpha);
  out.columns = col_of;
  std::sort(out.columns.begin(), out.columns.end());
  out.columns.erase(std::unique(out.columns.begin(), out.columns.end()), out.columns.end());
  for (const auto& ct : out.columns) out.patterns.push_back(admissible_patterns(ct, alpha, filter));

  std::map<std::pair<int, std::vector<int>>, std::vector<int>> groups;
  for (int c = 0; c < nc; ++c) {
    int col = static_cast<int>(std::lower_bound(out.columns.begin(), out.columns.end(), col_of[c]) - out.columns.begin());
    auto sizes = part_sizes(mg, c);
    std::vector<int> s;
    for (int p = 0; p < static_cast<int>(out.patterns[col].size()); ++p)
      if (clique_fc(sizes, out.patterns[col][p], nt_star, alpha) <= k) s.push_back(p);
    groups[{col, std::move(s)}].push_back(c);
  }
  out.group_of_clique.assign(nc, -1);
  int prev_col = -1;
  int within = 0;
  for (auto& [key, cliques] : groups) {
    if (key.first != prev_col) {
      prev_col = key.first;
      within = 0;
    }
    CliqueGroup g{key.first, within++, key.second, cliques};
    for (int c : cliques) out.group_of_clique[c] = static_cast<int>(out.groups.size());
    out.groups.push_back(std::move(g));
  }
  return out;
}

ILPModel build_model(const ModulatedGraph& mg, const Shape& shp, const CliquePartition& part, int k, int alpha,
                     long long gamma) {
  if (!is_coherent(shp, alpha)) throw DomainError("shape is not coherent");
  if (shp.width != mg.modulator_size()) throw DomainError("shape width does not match modulator");
  ILPModel model;
  auto& ip = model.program;
  const int d = mg.modulator_size();
  const std::uint32_t types = 1u << d;

  auto m_entry = [&](int col, int p) -> long long {
    auto it = shp.m.find({part.columns[col], part.patterns[col][p]});
    return it == shp.m.end() ? 0 : it->second;
  };

  // variables, with constraint (1) per group
  std::vector<std::vector<int>> vars_of_group(part.groups.size());
  for (std::size_t gi = 0; gi < part.groups.size(); ++gi) {
    const auto& g = part.groups[gi];
    Constraint row{"g" + std::to_string(g.column) + "_" + std::to_string(g.index_in_column), {}, Sense::Eq,
                   static_cast<long long>(g.cliques.size())};
    for (int p : g.admissible) {
      if (m_entry(g.column, p) <= 0) continue;
      int v = ip.add_var("x_" + std::to_string(g.column) + "_" + std::to_string(g.index_in_column) + "_" +
                             std::to_string(p),
                         0, static_cast<long long>(g.cliques.size()));
      model.keys.push_back({static_cast<int>(gi), p});
      vars_of_group[gi].push_back(v);
      row.terms.push_back({v, 1});
    }
    ip.rows.push_back(std::move(row));
  }

  // constraints (2)/(3) per shape entry
  int entry = 0;
  for (const auto& [key, count] : shp.m) {
    if (count <= 0) continue;
    const auto& [ct, sp] = key;
    auto cit = std::lower_bound(part.columns.begin(), part.columns.end(), ct);
    Constraint row{"m" + std::to_string(entry++), {}, count < gamma ? Sense::Eq : Sense::Ge,
                   std::min(count, gamma)};
    if (cit != part.columns.end() && *cit == ct) {
      const int col = static_cast<int>(cit - part.columns.begin());
      for (std::size_t vi = 0; vi < model.keys.size(); ++vi) {
        const auto& key2 = model.keys[vi];
        if (part.groups[key2.group].column == col && part.patterns[col][key2.pattern] == sp)
          row.terms.push_back({static_cast<int>(vi), 1});
      }
    }
    ip.rows.push_back(std::move(row));
  }

  // fat (column, type) pairs: all used patterns on an unbounded entry are fat (coherence)
  auto fat_pair = [&](int col, std::uint32_t t) {
    const auto& ct = part.columns[col];
    if (ct[t] <= alpha) return false;
    for (const auto& [key, count] : shp.m)
      if (count > 0 && key.first == ct) return classify(t, ct, key.second, alpha) == TripleClass::Fat;
    return false;
  };

  // total |C_nT| over the cliques of each column
  std::vector<std::vector<long long>> col_part_total(part.columns.size(), std::vector<long long>(types, 0));
  for (std::size_t gi = 0; gi < part.groups.size(); ++gi)
    for (int c : part.groups[gi].cliques)
      for (Vertex v : mg.cliques()[c]) ++col_part_total[part.groups[gi].column][mg.type_bits(v)];

  // constraint (4) per modulator vertex
  const Graph& g = mg.graph();
  for (int i = 0; i < d; ++i) {
    const Vertex dv = mg.modulator()[i];
    long long constant = 0;
    for (int j = 0; j < d; ++j)
      if (((shp.nt_star >> j) & 1u) && g.adjacent(dv, mg.modulator()[j])) ++constant;
    model.modulator_constants.push_back(static_cast<int>(constant));
    std::map<int, long long> coef;
    for (int col = 0; col < static_cast<int>(part.columns.size()); ++col) {
      for (std::uint32_t t = 0; t < types; ++t) {
        if (!((t >> i) & 1u) || part.columns[col][t] == 0) continue;
        const bool fat = fat_pair(col, t);
        if (fat) constant += col_part_total[col][t];
        for (std::size_t vi = 0; vi < model.keys.size(); ++vi) {
          const auto& key = model.keys[vi];
          if (part.groups[key.group].column != col) continue;
          const int s = part.patterns[col][key.pattern][t];
          coef[static_cast<int>(vi)] += fat ? -(alpha - s) : s;
        }
      }
    }
    Constraint row{"fc_" + std::to_string(dv), {}, Sense::Le, k - constant};
    for (auto [v, c] : coef)
      if (c != 0) row.terms.push_back({v, c});
    ip.rows.push_back(std::move(row));
  }
  return model;
}

FairSolution extract_solution(const Assignment& a, const ILPModel& model, const Shape& shp,
                              const CliquePartition& part, const ModulatedGraph& mg, int alpha) {
  if (a.size() != model.keys.size()) throw DomainError("assignment does not match model");
  const Graph& g = mg.graph();
  FairSolution sol{VertexSet(g.size()), 0, shp};
  for (int i = 0; i < mg.modulator_size(); ++i)
    if ((shp.nt_star >> i) & 1u) sol.x.insert(mg.modulator()[i]);

  std::vector<std::vector<std::pair<int, long long>>> per_group(part.groups.size());
  for (std::size_t vi = 0; vi < model.keys.size(); ++vi)
    per_group[model.keys[vi].group].emplace_back(model.keys[vi].pattern, a[vi]);

  for (std::size_t gi = 0; gi < part.groups.size(); ++gi) {
    auto& pats = per_group[gi];
    std::sort(pats.begin(), pats.end());
    const auto& grp = part.groups[gi];
    const auto& ct = part.columns[grp.column];
    std::size_t next = 0;
    for (auto [p, count] : pats) {
      const Pattern& sp = part.patterns[grp.column][p];
      for (long long r = 0; r < count && next < grp.cliques.size(); ++r) {
        const int c = grp.cliques[next++];
        for (std::uint32_t t = 0; t < sp.size(); ++t) {
          auto members = mg.part(c, t);
          if (members.empty()) continue;
          int take = matched_count(static_cast<int>(members.size()), ct[t], sp[t], alpha);
          for (int j = 0; j < take; ++j) sol.x.insert(members[j]);
        }
      }
    }
  }
  sol.fair_cost = fair_cost(g, sol.x);
  return sol;
}

std::string export_lp(const IntegerProgram& ip) {
  std::ostringstream out;
  out << "minimize\n obj: 0\nsubject to\n";
  for (const auto& r : ip.rows) {
    const char* op = r.sense == Sense::Eq ? "=" : r.sense == Sense::Le ? "<=" : ">=";
    if (r.terms.empty()) {
      out << "\\ " << r.name << ": 0 " << op << ' ' << r.rhs << '\n';
      continue;
    }
    out << ' ' << r.name << ':';
    bool first = true;
    for (const auto& t : r.terms) {
      if (first)
        out << ' ' << t.coef << ' ';
      else
        out << (t.coef < 0 ? " - " : " + ") << (t.coef < 0 ? -t.coef : t.coef) << ' ';
      out << ip.vars[t.var].name;
      first = false;
    }
    out << ' ' << op << ' ' << r.rhs << '\n';
  }
  out << "bounds\n";
  for (const auto& v : ip.vars) out << ' ' << v.lo << " <= " << v.name << " <= " << v.hi << '\n';
  out << "general\n";
  for (const auto& v : ip.vars) out << ' ' << v.name << '\n';
  out << "end\n";
  return out.str();
}

std::string export_lp(const ILPModel& model) { return export_lp(model.program); }

}  // namespace fairmso
