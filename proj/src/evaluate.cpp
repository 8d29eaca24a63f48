#include "fairmso/evaluate.hpp"

#include "fairmso/error.hpp"
#include "program.hpp"

namespace fairmso {

namespace {

constexpr char kOut = 0;
constexpr char kIn = 1;
constexpr char kUnknown = 2;

Truth negate(Truth t) {
  if (t == Truth::Unknown) return t;
  return t == Truth::True ? Truth::False : Truth::True;
}

// Components in BFS order; set searches follow it so conflicts along edges show up early.
std::vector<Vertex> bfs_order(const Graph& g) {
  std::vector<Vertex> order;
  std::vector<char> seen(g.size(), 0);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      Vertex v = order[head++];
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          order.push_back(w);
        }
    }
  }
  return order;
}

constexpr unsigned char kNotComputed = 3;

}  // namespace

class Evaluator {
 public:
  Evaluator(const Graph& g, const Program& p, std::vector<char> free_state, EvaluationCache* cache = nullptr)
      : g_(g), p_(p), vval_(p.vertex_slots, -1), sets_(p.set_slots), memo_(p.nodes.size()), cache_(cache) {
    sets_[0] = std::move(free_state);
  }

  Truth run() { return eval(p_.root); }

 private:
  Truth eval(int i) {
    const PNode& nd = p_.nodes[i];
    switch (nd.op) {
      case Op::And: {
        Truth a = eval(nd.lhs);
        if (a == Truth::False) return a;
        Truth b = eval(nd.rhs);
        if (b == Truth::False) return b;
        return a == Truth::True && b == Truth::True ? Truth::True : Truth::Unknown;
      }
      case Op::Or: {
        Truth a = eval(nd.lhs);
        if (a == Truth::True) return a;
        Truth b = eval(nd.rhs);
        if (b == Truth::True) return b;
        return a == Truth::False && b == Truth::False ? Truth::False : Truth::Unknown;
      }
      case Op::Implies: {
        Truth a = negate(eval(nd.lhs));
        if (a == Truth::True) return a;
        Truth b = eval(nd.rhs);
        if (b == Truth::True) return b;
        return a == Truth::False && b == Truth::False ? Truth::False : Truth::Unknown;
      }
      case Op::Not:
        return negate(eval(nd.lhs));
      case Op::ExistsV:
      case Op::ForallV:
        return nd.memo ? memoized(i, nd) : quantify_vertex(nd);
      case Op::ExistsS:
      case Op::ForallS:
        return quantify_sets(nd);
      case Op::Adj:
        return g_.adjacent(vval_[nd.a], vval_[nd.b]) ? Truth::True : Truth::False;
      case Op::Eq:
        return vval_[nd.a] == vval_[nd.b] ? Truth::True : Truth::False;
      case Op::In: {
        char s = sets_[nd.b][vval_[nd.a]];
        return s == kUnknown ? Truth::Unknown : s == kIn ? Truth::True : Truth::False;
      }
    }
    return Truth::Unknown;
  }

  Truth quantify_vertex(const PNode& nd) {
    const bool exists = nd.op == Op::ExistsV;
    const Truth stop = exists ? Truth::True : Truth::False;
    bool unknown = false;
    auto visit = [&](Vertex v) {
      vval_[nd.a] = v;
      Truth t = eval(nd.lhs);
      if (t == Truth::Unknown) unknown = true;
      return t == stop;
    };
    if (nd.guard >= 0) {
      for (Vertex v : g_.neighbors(vval_[nd.guard]))
        if (visit(v)) return stop;
    } else {
      for (Vertex v = 0; v < g_.size(); ++v)
        if (visit(v)) return stop;
    }
    return unknown ? Truth::Unknown : negate(stop);
  }

  Truth memoized(int i, const PNode& nd) {
    auto& table = nd.set_free && cache_ ? cache_->values_[i] : memo_[i];
    if (table.empty()) table.assign(nd.memo_slot < 0 ? 1 : g_.size(), kNotComputed);
    unsigned char& cell = table[nd.memo_slot < 0 ? 0 : vval_[nd.memo_slot]];
    if (cell == kNotComputed) cell = static_cast<unsigned char>(quantify_vertex(nd));
    return static_cast<Truth>(cell);
  }

  Truth quantify_sets(const PNode& nd) {
    if (order_.empty()) order_ = bfs_order(g_);
    for (int s : nd.set_slots) sets_[s].assign(g_.size(), kUnknown);
    return search(nd, 0);
  }

  // Assigns one (vertex, set) bit per level, "in" first; the body is checked
  // three-valued at every level so decided subtrees are cut.
  Truth search(const PNode& nd, std::size_t step) {
    const bool exists = nd.op == Op::ExistsS;
    const Truth stop = exists ? Truth::True : Truth::False;
    Truth here = eval(nd.lhs);
    if (here != Truth::Unknown) return here;
    const std::size_t k = nd.set_slots.size();
    if (step == order_.size() * k) return Truth::Unknown;
    Vertex v = order_[step / k];
    auto& cell = sets_[nd.set_slots[step % k]][v];
    bool unknown = false;
    for (char val : {kIn, kOut}) {
      cell = val;
      Truth t = search(nd, step + 1);
      if (t == stop) {
        cell = kUnknown;
        return stop;
      }
      if (t == Truth::Unknown) unknown = true;
    }
    cell = kUnknown;
    return unknown ? Truth::Unknown : negate(stop);
  }

  const Graph& g_;
  const Program& p_;
  std::vector<int> vval_;
  std::vector<std::vector<char>> sets_;
  std::vector<Vertex> order_;
  std::vector<std::vector<unsigned char>> memo_;
  EvaluationCache* cache_;
};

EvaluationCache::EvaluationCache(const Graph& g, const Formula& phi)
    : graph_(&g), program_(&phi.program()), values_(phi.program().nodes.size()) {}

bool EvaluationCache::built_for(const Graph& g, const Formula& phi) const {
  return graph_ == &g && program_ == &phi.program();
}

bool evaluate(const Graph& g, const VertexSet& free_set, const Formula& phi) {
  if (free_set.universe() != g.size()) throw DomainError("free set universe does not match graph");
  std::vector<char> state(g.size(), kOut);
  for (Vertex v = 0; v < g.size(); ++v)
    if (free_set.contains(v)) state[v] = kIn;
  return Evaluator(g, phi.program(), std::move(state)).run() == Truth::True;
}

Truth evaluate_partial(const Graph& g, std::span<const Truth> free_state, const Formula& phi) {
  if (static_cast<int>(free_state.size()) != g.size()) throw DomainError("free state size does not match graph");
  std::vector<char> state(g.size());
  for (Vertex v = 0; v < g.size(); ++v) state[v] = static_cast<char>(free_state[v]);
  return Evaluator(g, phi.program(), std::move(state)).run();
}

Truth evaluate_partial(const Graph& g, std::span<const Truth> free_state, const Formula& phi,
                       EvaluationCache& cache) {
  if (static_cast<int>(free_state.size()) != g.size()) throw DomainError("free state size does not match graph");
  if (!cache.built_for(g, phi)) throw DomainError("cache built for another instance");
  std::vector<char> state(g.size());
  for (Vertex v = 0; v < g.size(); ++v) state[v] = static_cast<char>(free_state[v]);
  return Evaluator(g, phi.program(), std::move(state), &cache).run();
}

}  // namespace fairmso
