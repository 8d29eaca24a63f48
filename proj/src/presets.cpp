#include "fairmso/presets.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "fairmso/error.hpp"

namespace fairmso {

namespace {

std::vector<int> normalize(std::vector<int> v) {
  for (int x : v)
    if (x < 0) throw DomainError("count sets hold naturals, got " + std::to_string(x));
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<int> parse_list(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view tok = text.substr(i, j - i);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError("bad count list entry '" + std::string(tok) + "'");
    out.push_back(v);
    i = j + 1;
  }
  return out;
}

const std::string kFree(kFreeName);

NodePtr truth() { return fx::eq("v", "v"); }
NodePtr falsity() { return fx::neg(truth()); }

NodePtr conj_all(std::vector<NodePtr> parts) {
  if (parts.empty()) return truth();
  NodePtr out = parts.back();
  for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i) out = fx::conj(parts[i], out);
  return out;
}

// At least t pairwise distinct neighbors of v lie in Free.
class Counter {
 public:
  NodePtr at_least(int t) {
    const int id = next_++;
    std::vector<std::string> names;
    for (int i = 1; i <= t; ++i) names.push_back("u" + std::to_string(id) + "_" + std::to_string(i));
    return build(names, 0);
  }

 private:
  NodePtr build(const std::vector<std::string>& names, std::size_t i) {
    const std::string& u = names[i];
    std::vector<NodePtr> parts{fx::adj(u, "v"), fx::in(u, kFree)};
    for (std::size_t j = 0; j < i; ++j) parts.push_back(fx::neg(fx::eq(u, names[j])));
    if (i + 1 < names.size()) parts.push_back(build(names, i + 1));
    return fx::exists_v(u, conj_all(parts));
  }

  int next_ = 0;
};

// |N(v) ∩ Free| in [lo, hi]; hi < 0 means unbounded.
NodePtr in_range(Counter& c, int lo, int hi) {
  std::vector<NodePtr> parts;
  if (lo > 0) parts.push_back(c.at_least(lo));
  if (hi >= 0) parts.push_back(fx::neg(c.at_least(hi + 1)));
  return conj_all(parts);
}

NodePtr membership(Counter& c, const CountSet& s) {
  std::vector<std::pair<int, int>> ranges;
  if (s.cofinite) {
    int start = 0;
    for (int e : s.values) {
      if (start < e) ranges.emplace_back(start, e - 1);
      start = e + 1;
    }
    ranges.emplace_back(start, -1);
  } else {
    for (std::size_t i = 0; i < s.values.size();) {
      std::size_t j = i;
      while (j + 1 < s.values.size() && s.values[j + 1] == s.values[j] + 1) ++j;
      ranges.emplace_back(s.values[i], s.values[j]);
      i = j + 1;
    }
  }
  if (ranges.empty()) return falsity();
  NodePtr out = in_range(c, ranges.back().first, ranges.back().second);
  for (int i = static_cast<int>(ranges.size()) - 2; i >= 0; --i)
    out = fx::disj(in_range(c, ranges[i].first, ranges[i].second), out);
  return out;
}

constexpr const char* kVc =
    "(forallV x (forallV y (implies (and (not (in x Free)) (not (in y Free))) (not (adj x y)))))";

constexpr const char* kDs = "(forallV v (implies (not (in v Free)) (existsV u (and (adj u v) (in u Free)))))";

// No nonempty S outside Free in which every member has two distinct neighbors in S.
constexpr const char* kFvs =
    "(not (existsS S (and (existsV w (in w S))"
    " (forallV x (implies (in x S) (and (not (in x Free))"
    " (existsV y (and (adj x y) (and (in y S)"
    " (existsV z (and (adj x z) (and (in z S) (not (eq y z))))))))))))))";

// V \ Free splits into A and B with no edge inside either side.
constexpr const char* kOct =
    "(existsS A (existsS B (forallV x (and"
    " (and (implies (in x Free) (and (not (in x A)) (not (in x B))))"
    " (implies (not (in x Free)) (or (and (in x A) (not (in x B))) (and (in x B) (not (in x A))))))"
    " (forallV y (implies (adj x y) (and (not (and (in x A) (in y A))) (not (and (in x B) (in y B))))))))))";

}  // namespace

CountSet CountSet::finite(std::vector<int> members) { return {false, normalize(std::move(members))}; }
CountSet CountSet::co_finite(std::vector<int> excluded) { return {true, normalize(std::move(excluded))}; }

CountSet CountSet::parse(std::string_view text) {
  if (text == "N") return naturals();
  if (text.substr(0, 4) == "coN:") return co_finite(parse_list(text.substr(4)));
  if (text == "{}" || text.empty()) return finite({});
  return finite(parse_list(text));
}

bool CountSet::contains(int x) const {
  bool listed = std::binary_search(values.begin(), values.end(), x);
  return cofinite ? !listed : listed;
}

std::string CountSet::to_string() const {
  if (is_naturals()) return "N";
  std::ostringstream out;
  if (cofinite) out << "coN:";
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  if (!cofinite && values.empty()) out << "{}";
  return out.str();
}

Problem Problem::sigma_rho(CountSet sigma, CountSet rho) {
  bool ok = !sigma.cofinite || (sigma.is_naturals() && rho.cofinite);
  if (!ok)
    throw DomainError("inadmissible [sigma,rho] pair: need sigma finite, or sigma = N with rho cofinite (got sigma=" +
                      sigma.to_string() + ", rho=" + rho.to_string() + ")");
  return {ProblemKind::SigmaRho, std::move(sigma), std::move(rho)};
}

std::string Problem::name() const {
  switch (kind) {
    case ProblemKind::VC: return "vc";
    case ProblemKind::FVS: return "fvs";
    case ProblemKind::OCT: return "oct";
    case ProblemKind::DS: return "ds";
    case ProblemKind::SigmaRho: return "sigma-rho(" + sigma.to_string() + ";" + rho.to_string() + ")";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "vc") return ProblemKind::VC;
  if (name == "fvs") return ProblemKind::FVS;
  if (name == "oct") return ProblemKind::OCT;
  if (name == "ds") return ProblemKind::DS;
  if (name == "sigma-rho" || name == "sigma_rho") return ProblemKind::SigmaRho;
  throw DomainError("unknown problem '" + std::string(name) + "'");
}

Formula preset_formula(const Problem& p) {
  switch (p.kind) {
    case ProblemKind::VC: return parse_formula(kVc);
    case ProblemKind::DS: return parse_formula(kDs);
    case ProblemKind::FVS: return parse_formula(kFvs);
    case ProblemKind::OCT: return parse_formula(kOct);
    case ProblemKind::SigmaRho: {
      Problem::sigma_rho(p.sigma, p.rho);
      Counter c;
      NodePtr in_x = fx::implies(fx::in("v", kFree), membership(c, p.sigma));
      NodePtr out_x = fx::implies(fx::neg(fx::in("v", kFree)), membership(c, p.rho));
      return Formula(fx::forall_v("v", fx::conj(in_x, out_x)));
    }
  }
  throw DomainError("unknown problem");
}

PatternFilter preset_pattern_filter(const Problem& p) {
  using K = PatternFilter::Kind;
  switch (p.kind) {
    case ProblemKind::VC: return {K::Fat, 1};
    case ProblemKind::FVS:
    case ProblemKind::OCT: return {K::Fat, 2};
    case ProblemKind::DS: return {K::Thin, 1};
    case ProblemKind::SigmaRho: {
      if (!p.sigma.cofinite) return {K::Thin, p.sigma.values.empty() ? 0 : p.sigma.values.back() + 1};
      return {K::Thin, p.rho.values.empty() ? 0 : p.rho.values.back() + 1};
    }
  }
  throw DomainError("unknown problem");
}

int recommended_alpha(const PatternFilter& f) {
  if (f.kind == PatternFilter::Kind::None) throw DomainError("no pattern filter, alpha has no recommended value");
  return 2 * f.c + 1;
}

long long recommended_gamma(const FormulaMetrics& m) { return 2LL * (m.q_v + 1); }

}  // namespace fairmso
