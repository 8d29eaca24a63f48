#include "fairmso/oracle.hpp"

#include <cstdlib>
#include <string>

#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"

namespace fairmso {

namespace {

// Enumerates subsets with fair cost <= k: each vertex is left out first, then taken if
// no neighbor would exceed k. First-order formulas are also cut by partial evaluation.
class Search {
 public:
  Search(const Graph& g, const Formula& phi, int k, int max_found)
      : g_(g), phi_(phi), k_(k), max_found_(max_found), fo_(metrics(phi).is_fo),
        state_(g.size(), Truth::Unknown), hits_(g.size(), 0), cache_(g, phi) {}

  void run() { dfs(0); }

  std::vector<VertexSet> found;
  long long checked = 0;

 private:
  VertexSet current() const {
    VertexSet x(g_.size());
    for (Vertex v = 0; v < g_.size(); ++v)
      if (state_[v] == Truth::True) x.insert(v);
    return x;
  }

  bool done() const { return static_cast<int>(found.size()) >= max_found_; }

  void dfs(Vertex v) {
    if (done()) return;
    if (v == g_.size()) {
      ++checked;
      VertexSet x = current();
      if (evaluate(g_, x, phi_)) found.push_back(std::move(x));
      return;
    }
    if (fo_ && v > 0) {
      ++checked;
      Truth t = evaluate_partial(g_, state_, phi_, cache_);
      if (t == Truth::False) return;
      if (t == Truth::True && max_found_ == 1) {
        found.push_back(current());
        return;
      }
    }
    state_[v] = Truth::False;
    dfs(v + 1);
    if (done()) {
      state_[v] = Truth::Unknown;
      return;
    }
    bool fits = true;
    for (Vertex w : g_.neighbors(v))
      if (hits_[w] + 1 > k_) fits = false;
    if (fits) {
      for (Vertex w : g_.neighbors(v)) ++hits_[w];
      state_[v] = Truth::True;
      dfs(v + 1);
      for (Vertex w : g_.neighbors(v)) --hits_[w];
    }
    state_[v] = Truth::Unknown;
  }

  const Graph& g_;
  const Formula& phi_;
  int k_;
  int max_found_;
  bool fo_;
  std::vector<Truth> state_;
  std::vector<int> hits_;
  EvaluationCache cache_;
};

void check_size(const Graph& g, const OracleConfig& cfg) {
  int limit = oracle_limit(cfg);
  if (g.size() > limit)
    throw ResourceLimitError("oracle limited to n <= " + std::to_string(limit) + ", graph has " +
                             std::to_string(g.size()) + " vertices (set FAIRMSO_MAX_ORACLE_N to raise)");
}

}  // namespace

int oracle_limit(const OracleConfig& cfg) {
  if (cfg.max_n > 0) return cfg.max_n;
  if (const char* env = std::getenv("FAIRMSO_MAX_ORACLE_N")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("FAIRMSO_MAX_ORACLE_N must be a positive integer, got '") + env + "'");
  }
  return kDefaultOracleLimit;
}

std::optional<VertexSet> oracle_decision(const Graph& g, const Formula& phi, int k, const OracleConfig& cfg) {
  check_size(g, cfg);
  if (k < 0) return std::nullopt;
  Search s(g, phi, k, 1);
  s.run();
  if (s.found.empty()) return std::nullopt;
  return s.found.front();
}

OracleResult oracle_min(const Graph& g, const Formula& phi, const OracleConfig& cfg) {
  check_size(g, cfg);
  OracleResult r;
  for (int k = 0; k <= g.max_degree(); ++k) {
    Search s(g, phi, k, 1);
    s.run();
    r.subsets_checked += s.checked;
    if (s.found.empty()) continue;
    r.k_star = k;
    Search all(g, phi, k, std::max(1, cfg.max_witnesses));
    all.run();
    r.subsets_checked += all.checked;
    r.witnesses = std::move(all.found);
    break;
  }
  return r;
}

}  // namespace fairmso
