#include "fairmso/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fairmso/error.hpp"

namespace fairmso {

Graph::Graph(int n) : n_(n), adj_(n), matrix_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw DomainError("negative vertex count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw DomainError("edge " + std::to_string(u) + " " + std::to_string(v) + " out of range");
    if (u == v) throw DomainError("self-loop at " + std::to_string(u));
    auto& cell = matrix_[static_cast<std::size_t>(u) * n + v];
    if (cell) continue;
    cell = 1;
    matrix_[static_cast<std::size_t>(v) * n + u] = 1;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++m_;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& a : adj_) best = std::max(best, static_cast<int>(a.size()));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<int> pos(n_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  std::vector<Edge> es;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (int w : adj_[keep[i]])
      if (pos[w] > static_cast<int>(i)) es.emplace_back(static_cast<int>(i), pos[w]);
  return Graph(static_cast<int>(keep.size()), es);
}

VertexSet VertexSet::from_list(int universe, std::span<const Vertex> members) {
  VertexSet s(universe);
  for (Vertex v : members) {
    if (v < 0 || v >= universe) throw DomainError("vertex " + std::to_string(v) + " out of range");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::from_mask(int universe, std::uint64_t mask) {
  VertexSet s(universe);
  for (int v = 0; v < universe; ++v)
    if ((mask >> v) & 1u) s.insert(v);
  return s;
}

void VertexSet::insert(Vertex v) {
  if (!bits_[v]) {
    bits_[v] = 1;
    ++count_;
  }
}

void VertexSet::erase(Vertex v) {
  if (bits_[v]) {
    bits_[v] = 0;
    --count_;
  }
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(count_);
  for (int v = 0; v < universe(); ++v)
    if (bits_[v]) out.push_back(v);
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  for (int v = 0; v < universe(); ++v)
    if (bits_[v] && !other.contains(v)) return false;
  return true;
}

std::string NeighborhoodType::to_string() const {
  std::string s;
  for (int i = 0; i < width; ++i) s += test(i) ? '1' : '0';
  return s;
}

std::vector<Vertex> ModulatedGraph::part(int clique, std::uint32_t bits) const {
  std::vector<Vertex> out;
  for (Vertex v : cliques_[clique])
    if (type_bits_[v] == bits) out.push_back(v);
  return out;
}

Graph ModulatedGraph::modulator_subgraph() const { return graph_.induced(modulator_); }

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view tok, int line) {
  int value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": expected integer, got '" + std::string(tok) + "'", line);
  return value;
}

}  // namespace

GraphDocument parse_graph_document(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }

  std::size_t idx = 0;
  auto next_content = [&]() -> int {
    while (idx < lines.size() && split_ws(lines[idx]).empty()) ++idx;
    return idx < lines.size() ? static_cast<int>(idx) : -1;
  };

  int hl = next_content();
  if (hl < 0) throw ParseError("empty graph document", 1);
  auto head = split_ws(lines[hl]);
  if (head.size() != 2) throw ParseError("line " + std::to_string(hl + 1) + ": expected 'n m'", hl + 1);
  int n = parse_int(head[0], hl + 1);
  int m = parse_int(head[1], hl + 1);
  if (n < 0 || m < 0) throw ParseError("line " + std::to_string(hl + 1) + ": negative count", hl + 1);
  ++idx;

  std::vector<Edge> edges;
  edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    int li = next_content();
    if (li < 0) throw ParseError("expected " + std::to_string(m) + " edges, found " + std::to_string(e), static_cast<int>(lines.size()));
    int ln = li + 1;
    auto tok = split_ws(lines[li]);
    if (tok.size() != 2) throw ParseError("line " + std::to_string(ln) + ": expected 'u v'", ln);
    int u = parse_int(tok[0], ln);
    int v = parse_int(tok[1], ln);
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError("line " + std::to_string(ln) + ": vertex id out of range", ln);
    if (u == v) throw ParseError("line " + std::to_string(ln) + ": self-loop", ln);
    edges.emplace_back(u, v);
    ++idx;
  }

  GraphDocument doc{Graph(n, edges), std::nullopt};
  int li = next_content();
  if (li >= 0) {
    int ln = li + 1;
    std::string_view line = lines[li];
    constexpr std::string_view tag = "modulator:";
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line.substr(first, tag.size()) != tag)
      throw ParseError("line " + std::to_string(ln) + ": unexpected content", ln);
    std::vector<Vertex> d;
    for (auto tok : split_ws(line.substr(first + tag.size()))) {
      int v = parse_int(tok, ln);
      if (v < 0 || v >= n) throw ParseError("line " + std::to_string(ln) + ": modulator vertex out of range", ln);
      if (std::find(d.begin(), d.end(), v) != d.end())
        throw ParseError("line " + std::to_string(ln) + ": duplicate modulator vertex", ln);
      d.push_back(v);
    }
    doc.modulator = std::move(d);
    ++idx;
    if (next_content() >= 0) {
      int extra = static_cast<int>(idx) + 1;
      throw ParseError("line " + std::to_string(extra) + ": trailing content", extra);
    }
  }
  return doc;
}

Graph load_graph(std::string_view text) { return parse_graph_document(text).graph; }

GraphDocument read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph_document(ss.str());
}

std::string format_graph(const Graph& g, std::span<const Vertex> modulator) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  if (!modulator.empty()) {
    out << "modulator:";
    for (Vertex v : modulator) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

ModulatedGraph validate_modulator(const Graph& g, std::span<const Vertex> modulator) {
  const int n = g.size();
  if (static_cast<int>(modulator.size()) > kMaxModulatorSize)
    throw ResourceLimitError("modulator of size " + std::to_string(modulator.size()) + " exceeds limit " +
                             std::to_string(kMaxModulatorSize));
  ModulatedGraph mg;
  mg.graph_ = g;
  mg.modulator_.assign(modulator.begin(), modulator.end());
  mg.modulator_index_.assign(n, -1);
  for (std::size_t i = 0; i < modulator.size(); ++i) {
    Vertex v = modulator[i];
    if (v < 0 || v >= n) throw DomainError("modulator vertex " + std::to_string(v) + " out of range");
    if (mg.modulator_index_[v] >= 0) throw DomainError("duplicate modulator vertex " + std::to_string(v));
    mg.modulator_index_[v] = static_cast<int>(i);
  }

  mg.clique_of_.assign(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (mg.modulator_index_[s] >= 0 || mg.clique_of_[s] >= 0) continue;
    const int id = static_cast<int>(mg.cliques_.size());
    std::vector<Vertex> comp{s};
    mg.clique_of_[s] = id;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (Vertex w : g.neighbors(comp[h]))
        if (mg.modulator_index_[w] < 0 && mg.clique_of_[w] < 0) {
          mg.clique_of_[w] = id;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = i + 1; j < comp.size(); ++j)
        if (!g.adjacent(comp[i], comp[j]))
          throw ModulatorError("not a modulator: " + std::to_string(comp[i]) + " and " + std::to_string(comp[j]) +
                                   " share a component of G - D but are not adjacent",
                               comp[i], comp[j]);
    mg.cliques_.push_back(std::move(comp));
  }

  mg.type_bits_.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (mg.modulator_index_[v] >= 0) continue;
    std::uint32_t bits = 0;
    for (Vertex w : g.neighbors(v))
      if (mg.modulator_index_[w] >= 0) bits |= 1u << mg.modulator_index_[w];
    mg.type_bits_[v] = bits;
  }
  return mg;
}

NeighborhoodType neighborhood_type(const ModulatedGraph& mg, Vertex v) {
  if (v < 0 || v >= mg.graph().size()) throw DomainError("vertex out of range");
  if (mg.in_modulator(v)) throw DomainError("vertex " + std::to_string(v) + " lies in the modulator");
  return NeighborhoodType{mg.type_bits(v), mg.modulator_size()};
}

CliqueSignature truncated_signature(const ModulatedGraph& mg, int clique, int cap) {
  CliqueSignature sig(mg.type_count(), 0);
  for (Vertex v : mg.cliques()[clique]) ++sig[mg.type_bits(v)];
  for (auto& c : sig) c = std::min(c, cap);
  return sig;
}

int fair_cost(const Graph& g, const VertexSet& x) {
  std::vector<int> hit(g.size(), 0);
  for (Vertex u = 0; u < g.size(); ++u)
    if (x.contains(u))
      for (Vertex w : g.neighbors(u)) ++hit[w];
  int best = 0;
  for (int h : hit) best = std::max(best, h);
  return best;
}

}  // namespace fairmso
