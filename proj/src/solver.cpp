#include "fairmso/solver.hpp"

#include <algorithm>
#include <climits>
#include <thread>

#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"

namespace fairmso {

namespace {

// One column's share of M: (pattern index, count) pairs with count > 0.
using ColumnChoice = std::vector<std::pair<int, long long>>;

void gen_choices(const std::vector<int>& usable, std::size_t i, long long cliques, long long gamma, long long noncapped,
                 long long capped, ColumnChoice& cur, std::vector<ColumnChoice>& out) {
  if (noncapped + gamma * capped > cliques) return;
  if (i == usable.size()) {
    if (capped == 0 ? noncapped == cliques : true) out.push_back(cur);
    return;
  }
  const long long top = std::min(gamma, cliques);
  for (long long c = top; c >= 0; --c) {
    if (c > 0) cur.emplace_back(usable[i], c);
    if (c == gamma)
      gen_choices(usable, i + 1, cliques, gamma, noncapped, capped + 1, cur, out);
    else
      gen_choices(usable, i + 1, cliques, gamma, noncapped + c, capped, cur, out);
    if (c > 0) cur.pop_back();
  }
}

bool choice_coherent(const ColumnType& ct, const std::vector<Pattern>& pats, const ColumnChoice& ch, int alpha) {
  for (std::uint32_t t = 0; t < ct.size(); ++t) {
    if (ct[t] <= alpha) continue;
    int seen = 0;
    for (auto [p, c] : ch) seen |= 2 * pats[p][t] < alpha ? 1 : 2;
    if (seen == 3) return false;
  }
  return true;
}

long long sat_mul(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a > LLONG_MAX / b ? LLONG_MAX : a * b;
}

}  // namespace

struct ShapeSolver::Outcome {
  std::optional<FairSolution> answer;
  long long enumerated = 0;
  long long evaluated = 0;
  long long satisfying = 0;
  long long incoherent = 0;
  long long ilp_feasible = 0;
  long long verification_failures = 0;
  std::vector<std::pair<Shape, bool>> seen;
};

ShapeSolver::ShapeSolver(const ModulatedGraph& mg, const Formula& phi, SolveConfig cfg)
    : mg_(mg), phi_(phi), cfg_(std::move(cfg)), modulator_graph_(mg.modulator_subgraph()) {
  if (cfg_.alpha < 1 || cfg_.alpha % 2 == 0) throw DomainError("alpha must be a positive odd integer");
  if (cfg_.gamma < 1) throw DomainError("gamma must be at least 1");
  if (cfg_.filter.c < 0) throw DomainError("pattern filter bound must be non-negative");
}

bool ShapeSolver::cached_evaluate(const Shape& shp, Outcome& out) {
  std::optional<bool> value;
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(shp);
    if (it != cache_.end()) value = it->second;
  }
  if (!value) {
    value = evaluate_shape(shp, phi_, modulator_graph_, cfg_.alpha);
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(shp, *value);
  }
  // counted per request so totals do not depend on what other threads cached
  ++out.evaluated;
  if (*value) ++out.satisfying;
  if (cfg_.on_shape) out.seen.emplace_back(shp, *value);
  return *value;
}

ShapeSolver::Outcome ShapeSolver::run_nt_star(std::uint32_t nt_star, int k, long long shape_budget,
                                             const std::atomic<long long>& cutoff) {
  Outcome out;
  const int alpha = cfg_.alpha;
  const long long gamma = cfg_.gamma;
  CliquePartition part = partition_by_S(mg_, nt_star, alpha, k, cfg_.filter);
  const std::size_t ncols = part.columns.size();

  std::vector<long long> col_cliques(ncols, 0);
  std::vector<std::vector<int>> usable(ncols);
  for (const auto& g : part.groups) {
    col_cliques[g.column] += static_cast<long long>(g.cliques.size());
    usable[g.column].insert(usable[g.column].end(), g.admissible.begin(), g.admissible.end());
  }
  for (auto& u : usable) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }

  std::vector<std::vector<ColumnChoice>> options(ncols);
  long long all_combos = 1;
  long long coherent_combos = 1;
  for (std::size_t c = 0; c < ncols; ++c) {
    std::vector<ColumnChoice> raw;
    ColumnChoice cur;
    gen_choices(usable[c], 0, col_cliques[c], gamma, 0, 0, cur, raw);
    all_combos = sat_mul(all_combos, static_cast<long long>(raw.size()));
    for (auto& ch : raw)
      if (choice_coherent(part.columns[c], part.patterns[c], ch, alpha)) options[c].push_back(std::move(ch));
    coherent_combos = sat_mul(coherent_combos, static_cast<long long>(options[c].size()));
  }
  if (cfg_.coherence == CoherencePolicy::ReportSkipped) out.incoherent = all_combos - coherent_combos;
  if (coherent_combos == 0) return out;

  std::vector<std::size_t> idx(ncols, 0);
  while (true) {
    if (static_cast<long long>(nt_star) > cutoff.load()) return out;
    if (++out.enumerated > shape_budget)
      throw ResourceLimitError("shape enumeration exceeded " + std::to_string(cfg_.max_shapes) + " shapes");

    Shape shp;
    shp.nt_star = nt_star;
    shp.width = mg_.modulator_size();
    for (std::size_t c = 0; c < ncols; ++c)
      for (auto [p, cnt] : options[c][idx[c]]) shp.m[{part.columns[c], part.patterns[c][p]}] = cnt;

    ILPModel model = build_model(mg_, shp, part, k, alpha, gamma);
    if (auto a = solve_ilp(model.program)) {
      ++out.ilp_feasible;
      if (cached_evaluate(shp, out)) {
        FairSolution sol = extract_solution(*a, model, shp, part, mg_, alpha);
        bool ok = sol.fair_cost <= k && evaluate(mg_.graph(), sol.x, phi_) &&
                  compute_shape(mg_, sol.x, alpha, gamma) == shp;
        if (ok) {
          out.answer = std::move(sol);
          return out;
        }
        ++out.verification_failures;
      }
    }

    std::size_t c = 0;
    while (c < ncols && ++idx[c] == options[c].size()) idx[c++] = 0;
    if (c == ncols) break;
  }
  return out;
}

void ShapeSolver::decide_into(int k, SolveReport& rep) {
  const std::uint32_t count = 1u << mg_.modulator_size();
  std::vector<std::optional<Outcome>> results(count);
  std::atomic<long long> cutoff{LLONG_MAX};
  std::atomic<std::uint32_t> next{0};
  std::atomic<long long> enumerated{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      std::uint32_t i = next++;
      if (i >= count || static_cast<long long>(i) > cutoff.load()) return;
      try {
        long long budget = cfg_.max_shapes - enumerated.load();
        Outcome o = run_nt_star(i, k, budget, cutoff);
        enumerated += o.enumerated;
        if (o.answer) {
          long long cur = cutoff.load();
          while (static_cast<long long>(i) < cur && !cutoff.compare_exchange_weak(cur, i)) {
          }
        }
        results[i] = std::move(o);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cutoff = -1;
        return;
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(cfg_.jobs, static_cast<int>(count)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // merge in nT* order up to the first answer, so the report is independent of scheduling
  bool found = false;
  for (std::uint32_t i = 0; i < count && !found; ++i) {
    if (!results[i]) continue;
    auto& o = *results[i];
    rep.shapes_enumerated += o.enumerated;
    rep.shapes_evaluated += o.evaluated;
    rep.shapes_satisfying += o.satisfying;
    rep.shapes_incoherent_skipped += o.incoherent;
    rep.ilp_feasible += o.ilp_feasible;
    rep.verification_failures += o.verification_failures;
    if (cfg_.on_shape)
      for (const auto& [shp, v] : o.seen) cfg_.on_shape(shp, v);
    if (o.answer) {
      rep.answer = std::move(o.answer);
      found = true;
    }
  }
  rep.decisions.emplace_back(k, found);
}

SolveReport ShapeSolver::decide(int k) {
  SolveReport rep;
  if (k < 0) {
    rep.decisions.emplace_back(k, false);
    return rep;
  }
  decide_into(k, rep);
  return rep;
}

SolveReport ShapeSolver::minimize() {
  SolveReport rep;
  int hi = mg_.graph().max_degree();
  decide_into(hi, rep);
  if (!rep.answer) return rep;
  std::optional<FairSolution> best = std::move(rep.answer);
  rep.answer.reset();
  int best_k = hi;
  int lo = 0;
  hi = hi - 1;
  while (lo <= hi) {
    int mid = lo + (hi - lo) / 2;
    decide_into(mid, rep);
    if (rep.answer) {
      best = std::move(rep.answer);
      rep.answer.reset();
      best_k = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  rep.answer = std::move(best);
  rep.k_star = best_k;
  return rep;
}

SolveReport solve_decision(const ModulatedGraph& mg, const Formula& phi, int k, const SolveConfig& cfg) {
  return ShapeSolver(mg, phi, cfg).decide(k);
}

SolveReport solve_min(const ModulatedGraph& mg, const Formula& phi, const SolveConfig& cfg) {
  return ShapeSolver(mg, phi, cfg).minimize();
}

}  // namespace fairmso
