#include "fairmso/hardness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "fairmso/error.hpp"

namespace fairmso {

namespace {

std::vector<std::vector<int>> numeric_lines(std::string_view text) {
  std::vector<std::vector<int>> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    std::vector<int> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) {
        int v = 0;
        auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, v);
        if (ec != std::errc() || p != line.data() + j)
          throw ParseError("line " + std::to_string(line_no) + ": expected integer", line_no);
        row.push_back(v);
      }
      i = j;
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

const std::string kFree(kFreeName);

NodePtr conj_all(const std::vector<NodePtr>& parts) {
  NodePtr out = parts.back();
  for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i) out = fx::conj(parts[i], out);
  return out;
}

NodePtr modul(const std::string& x, const std::string& tag) {
  const std::string a = "a" + tag, b = "b" + tag, c = "c" + tag;
  NodePtr inner = conj_all({fx::adj(c, x), fx::neg(fx::eq(a, c)), fx::neg(fx::eq(b, c)), fx::neg(fx::adj(b, c)),
                            fx::neg(fx::adj(c, a))});
  NodePtr mid = conj_all({fx::adj(b, x), fx::neg(fx::eq(a, b)), fx::neg(fx::adj(a, b)), fx::exists_v(c, inner)});
  return fx::exists_v(a, fx::conj(fx::adj(a, x), fx::exists_v(b, mid)));
}

std::string xname(int i) { return "x" + std::to_string(i); }

// Survivors x_1..x_d in one clique, none passing modul, told apart pairwise by some u.
// With free_guards the x_i must lie outside Free; otherwise the text speaks about G - X.
NodePtr tuple_formula(int d, bool free_guards) {
  std::vector<NodePtr> pairs;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      if (i == j) continue;
      const std::string u = "u" + std::to_string(i) + "_" + std::to_string(j);
      pairs.push_back(fx::exists_v(
          u, conj_all({fx::adj(u, xname(i)), fx::neg(fx::adj(u, xname(j))), fx::neg(fx::eq(u, xname(j)))})));
    }

  NodePtr body;
  for (int i = d; i >= 1; --i) {
    const std::string x = xname(i);
    std::vector<NodePtr> parts;
    if (i > 1) parts.push_back(fx::adj(x, xname(1)));
    if (free_guards) parts.push_back(fx::neg(fx::in(x, kFree)));
    parts.push_back(fx::neg(modul(x, std::to_string(i))));
    for (int j = 1; j < i; ++j) {
      parts.push_back(fx::neg(fx::eq(x, xname(j))));
      if (j > 1) parts.push_back(fx::adj(x, xname(j)));
    }
    if (i == d) {
      parts.insert(parts.end(), pairs.begin(), pairs.end());
    } else {
      parts.push_back(body);
    }
    body = fx::exists_v(x, conj_all(parts));
  }
  return fx::neg(body);
}

// symmetric: all bins equal, so only the first empty bin is tried
bool assign(const std::vector<std::vector<int>>& items, std::size_t i, std::vector<long long>& load, long long cap,
            bool symmetric) {
  if (i == items.size()) return true;
  bool tried_empty = false;
  for (std::size_t k = 0; k < load.size(); ++k) {
    if (load[k] + items[i][k] > cap) continue;
    if (symmetric && load[k] == 0) {
      if (tried_empty) continue;
      tried_empty = true;
    }
    load[k] += items[i][k];
    bool ok = assign(items, i + 1, load, cap, symmetric);
    load[k] -= items[i][k];
    if (ok) return true;
  }
  return false;
}

}  // namespace

BinPackingInstance parse_binpack(std::string_view text) {
  auto rows = numeric_lines(text);
  if (rows.empty() || rows[0].size() != 2) throw ParseError("bin packing file must start with 'l B'", 1);
  BinPackingInstance bp{{}, rows[0][0], rows[0][1]};
  if (bp.bins < 1 || bp.capacity < 1) throw ParseError("l and B must be positive", 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (int s : rows[i]) {
      if (s < 1) throw ParseError("item sizes must be positive", static_cast<int>(i) + 1);
      bp.sizes.push_back(s);
    }
  }
  return bp;
}

DTupleInstance parse_dtuple(std::string_view text) {
  auto rows = numeric_lines(text);
  if (rows.empty() || rows[0].size() != 2) throw ParseError("d-tuple file must start with 'd b'", 1);
  DTupleInstance dt{{}, rows[0][0], rows[0][1]};
  if (dt.d < 1 || dt.budget < 0) throw ParseError("d must be positive and b non-negative", 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != dt.d)
      throw ParseError("tuple has " + std::to_string(rows[i].size()) + " entries, expected " + std::to_string(dt.d),
                       static_cast<int>(i) + 1);
    for (int a : rows[i])
      if (a < 0) throw ParseError("tuple entries must be non-negative", static_cast<int>(i) + 1);
    if (std::all_of(rows[i].begin(), rows[i].end(), [](int a) { return a == 0; }))
      throw ParseError("tuples must be non-zero", static_cast<int>(i) + 1);
    dt.tuples.push_back(rows[i]);
  }
  return dt;
}

DTupleInstance binpack_to_dtuple(const BinPackingInstance& bp) {
  DTupleInstance dt{{}, bp.bins, bp.capacity};
  for (int s : bp.sizes) dt.tuples.emplace_back(bp.bins, s);
  return dt;
}

Formula modul_characterization() {
  NodePtr m = modul("x", "");
  NodePtr in = fx::in("x", kFree);
  return Formula(fx::forall_v("x", fx::conj(fx::implies(m, in), fx::implies(in, m))));
}

HardInstance dtuple_to_fairfo(const DTupleInstance& dt) {
  if (dt.d < 1 || dt.d > kMaxModulatorSize) throw DomainError("d must lie in 1.." + std::to_string(kMaxModulatorSize));
  HardInstance inst;
  for (const auto& t : dt.tuples) {
    if (static_cast<int>(t.size()) != dt.d) throw DomainError("tuple width does not match d");
    if (std::any_of(t.begin(), t.end(), [](int a) { return a <= 0; }))
      ++inst.dropped_tuples;
    else
      inst.kept_tuples.push_back(t);
  }

  std::vector<Edge> edges;
  int next = dt.d;
  for (const auto& t : inst.kept_tuples) {
    const int first = next;
    for (int k = 0; k < dt.d; ++k)
      for (int r = 0; r < t[k]; ++r) edges.emplace_back(k, next++);
    for (int u = first; u < next; ++u)
      for (int w = u + 1; w < next; ++w) edges.emplace_back(u, w);
  }
  // With fewer than three tuples modul(v_k) fails; pendants supply the missing non-adjacent
  // neighbors. They never join a tuple when d >= 2, and with d = 1 none are needed.
  const int kept = static_cast<int>(inst.kept_tuples.size());
  if (dt.d >= 2 && kept < 3) {
    inst.pendants_per_modulator_vertex = 3 - kept;
    for (int k = 0; k < dt.d; ++k)
      for (int p = kept; p < 3; ++p) edges.emplace_back(k, next++);
  }
  inst.graph = Graph(next, edges);
  for (int k = 0; k < dt.d; ++k) inst.modulator.push_back(k);
  inst.formula = Formula(tuple_formula(dt.d, true));
  inst.deletion_form = to_string(*tuple_formula(dt.d, false));
  inst.k = dt.budget;
  if (kept < 3 && dt.d >= 2)
    inst.warnings.push_back("only " + std::to_string(kept) + " tuples survive; added " +
                            std::to_string(3 - kept) + " pendant vertices per modulator vertex for modul(v)");
  else if (kept < 3)
    inst.warnings.push_back("only " + std::to_string(kept) +
                            " tuples survive; modul(v) does not recognize the modulator vertex");
  return inst;
}

bool binpack_feasible(const BinPackingInstance& bp) {
  std::vector<std::vector<int>> items;
  for (int s : bp.sizes) items.emplace_back(bp.bins, s);
  std::sort(items.begin(), items.end(), std::greater<>());
  std::vector<long long> load(bp.bins, 0);
  return assign(items, 0, load, bp.capacity, true);
}

bool dtuple_feasible(const DTupleInstance& dt) {
  std::vector<std::vector<int>> items;
  for (const auto& t : dt.tuples)
    if (std::all_of(t.begin(), t.end(), [](int a) { return a > 0; })) items.push_back(t);
  std::vector<long long> load(dt.d, 0);
  return assign(items, 0, load, dt.budget, false);
}

std::string hard_meta_json(const HardInstance& inst, const DTupleInstance& dt, const BinPackingInstance* bp) {
  nlohmann::ordered_json j;
  if (bp) j["binpack"] = {{"bins", bp->bins}, {"capacity", bp->capacity}, {"sizes", bp->sizes}};
  j["dtuple"] = {{"d", dt.d}, {"b", dt.budget}, {"tuples", dt.tuples}};
  j["kept_tuples"] = inst.kept_tuples;
  j["dropped_tuples"] = inst.dropped_tuples;
  j["pendants_per_modulator_vertex"] = inst.pendants_per_modulator_vertex;
  j["k"] = inst.k;
  j["modulator"] = inst.modulator;
  j["free_is_deleted_set"] = true;
  if (inst.kept_tuples.size() <= 20)
    j["expected"] = dtuple_feasible(dt) ? "YES" : "NO";
  else
    j["expected"] = nullptr;
  j["warnings"] = inst.warnings;
  return j.dump(2) + "\n";
}

void write_hard_instance(const std::string& prefix, const HardInstance& inst, const std::string& meta_json) {
  auto write = [](const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << body;
  };
  write(prefix + ".graph", format_graph(inst.graph, inst.modulator));
  std::string mso = "; Free is the deleted set X, budget k = " + std::to_string(inst.k) + "\n";
  mso += "; over the surviving graph G - X: " + inst.deletion_form + "\n";
  mso += to_string(inst.formula) + "\n";
  write(prefix + ".mso", mso);
  write(prefix + ".meta", meta_json);
}

}  // namespace fairmso
