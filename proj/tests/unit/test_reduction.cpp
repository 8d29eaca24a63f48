#include <doctest.h>

#include "fairmso/error.hpp"
#include "fairmso/evaluate.hpp"
#include "fairmso/reduction.hpp"
#include "support.hpp"

using namespace fairmso;
using namespace fairmso::testing;

namespace {

int expected_kept(int t, int a, int tau) {
  if (2 * a <= tau) return a;
  if (2 * a <= 2 * t - tau) return tau / 2;
  return tau - (t - a);
}

int kept_in_x(std::span<const Vertex> t, const VertexSet& x, const std::vector<Vertex>& q) {
  int kept = 0;
  for (Vertex v : t)
    if (x.contains(v) && std::find(q.begin(), q.end(), v) == q.end()) ++kept;
  return kept;
}

// d modulator vertices, one clique whose first `twins` members share one attachment pattern,
// plus `extra` vertices forming a second clique with random attachments.
ModInstance twin_heavy(int d, int twins, int other, int extra, Rng& rng) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (uniform(rng, 0, 1)) e.emplace_back(i, j);
  const int first = d, size = twins + other;
  std::uint32_t shared = static_cast<std::uint32_t>(uniform(rng, 0, (1 << d) - 1));
  for (int a = first; a < first + size; ++a) {
    for (int b = a + 1; b < first + size; ++b) e.emplace_back(a, b);
    std::uint32_t bits = a < first + twins ? shared : static_cast<std::uint32_t>(uniform(rng, 0, (1 << d) - 1));
    for (int m = 0; m < d; ++m)
      if ((bits >> m) & 1) e.emplace_back(a, m);
  }
  const int second = first + size;
  for (int a = second; a < second + extra; ++a) {
    for (int b = a + 1; b < second + extra; ++b) e.emplace_back(a, b);
    for (int m = 0; m < d; ++m)
      if (uniform(rng, 0, 1)) e.emplace_back(a, m);
  }
  ModInstance out{make_graph(second + extra, e), {}};
  for (int m = 0; m < d; ++m) out.modulator.push_back(m);
  return out;
}

}  // namespace

TEST_CASE("select_Q examples") {
  std::vector<Vertex> t(20);
  for (int i = 0; i < 20; ++i) t[i] = i;
  auto with = [](int count) {
    VertexSet x(20);
    for (int i = 0; i < count; ++i) x.insert(i);
    return x;
  };
  for (auto [a, kept] : {std::pair{3, 3}, std::pair{10, 4}, std::pair{18, 6}}) {
    VertexSet x = with(a);
    auto q = select_Q(t, x, 8);
    CHECK(20 - static_cast<int>(q.size()) == 8);
    CHECK(kept_in_x(t, x, q) == kept);
  }
  CHECK_THROWS_AS(select_Q(std::span<const Vertex>(t.data(), 5), with(2), 8), DomainError);
}

TEST_CASE("select_Q case table holds exhaustively") {
  Rng rng(1);
  for (int tau : {2, 4, 8})
    for (int size = tau; size <= 30; ++size)
      for (int a = 0; a <= size; ++a) {
        std::vector<Vertex> t(size);
        for (int i = 0; i < size; ++i) t[i] = 2 * i + 1;
        // X hits a random a-subset of T and some vertices outside T
        std::vector<Vertex> pick = t;
        std::shuffle(pick.begin(), pick.end(), rng);
        VertexSet x(2 * size + 2);
        for (int i = 0; i < a; ++i) x.insert(pick[i]);
        x.insert(0);
        auto q = select_Q(t, x, tau);
        CHECK(size - static_cast<int>(q.size()) == tau);
        for (Vertex v : q) CHECK(std::find(t.begin(), t.end(), v) != t.end());
        CHECK(kept_in_x(t, x, q) == expected_kept(size, a, tau));
      }
}

TEST_CASE("select_Q removes lowest-numbered vertices first on each side") {
  std::vector<Vertex> t{9, 3, 5, 7, 1, 11};
  VertexSet x(12);
  for (Vertex v : {1, 5, 9, 11}) x.insert(v);
  auto q = select_Q(t, x, 2);
  // a=4 > 1 and b=2 >= 1: keep one of each, dropping 1,5,9 and 3
  CHECK(q == std::vector<Vertex>{1, 3, 5, 9});
}

TEST_CASE("deleting Q preserves every corpus formula") {
  Rng rng(77);
  long long checked = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int d = uniform(rng, 0, 2);
    ModInstance inst = twin_heavy(d, uniform(rng, 4, 6), uniform(rng, 0, 1), uniform(rng, 0, 2), rng);
    ModulatedGraph mg = validate_modulator(inst.graph, inst.modulator);
    const int n = inst.graph.size();
    std::vector<Vertex> twins = mg.part(0, mg.type_bits(d));
    for (const auto& text : fo_corpus()) {
      Formula phi = parse_formula(text);
      const int tau = static_cast<int>(derive_params(metrics(phi), d).tau);
      if (static_cast<int>(twins.size()) < tau) continue;
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        VertexSet x = mask_set(n, mask);
        auto q = select_Q(twins, x, tau);
        ReducedInstance r = delete_vertices(mg, x, q);
        CHECK(evaluate(inst.graph, x, phi) == evaluate(r.mg.graph(), r.set, phi));
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("remove_irrelevant_clique examples") {
  // modulator vertex 0 adjacent to every clique vertex
  auto stars = [](int copies, int size) {
    std::vector<std::pair<int, int>> e;
    int v = 1;
    for (int c = 0; c < copies; ++c) {
      for (int a = v; a < v + size; ++a) {
        e.emplace_back(0, a);
        for (int b = a + 1; b < v + size; ++b) e.emplace_back(a, b);
      }
      v += size;
    }
    return make_graph(v, e);
  };
  std::vector<Vertex> d{0};

  ModulatedGraph distinct = validate_modulator(make_graph(4, {{0, 1}, {2, 3}}), std::vector<Vertex>{});
  CHECK_FALSE(remove_irrelevant_clique(distinct, VertexSet(4), 2));

  ModulatedGraph four = validate_modulator(stars(4, 2), d);
  VertexSet x = mask_set(9, 0b010101010);  // one vertex of every pair
  auto r = remove_irrelevant_clique(four, x, 3);
  REQUIRE(r);
  CHECK(r->removed_clique == 3);
  CHECK(r->reduced.mg.cliques().size() == 3);
  CHECK(r->reduced.set.size() == 3);
  CHECK_FALSE(remove_irrelevant_clique(r->reduced.mg, r->reduced.set, 3));

  VertexSet mixed = mask_set(9, 0b000011110);  // pairs labeled (2 in), (2 in), (0 in), (0 in)
  CHECK_FALSE(remove_irrelevant_clique(four, mixed, 3));
  VertexSet varied = mask_set(9, 0b001001110);
  CHECK_FALSE(remove_irrelevant_clique(four, varied, 3));
}

TEST_CASE("irrelevant clique removal preserves every corpus formula") {
  Rng rng(404);
  long long removals = 0;
  for (int trial = 0; trial < 40; ++trial) {
    // d <= 2 modulator vertices, k copies of one small clique type, and a few extra vertices
    const int d = uniform(rng, 0, 2);
    const int size = uniform(rng, 1, 2);
    const std::uint32_t bits = static_cast<std::uint32_t>(uniform(rng, 0, (1 << d) - 1));
    const int copies = std::min((10 - d) / size, uniform(rng, 5, 8));
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (uniform(rng, 0, 1)) e.emplace_back(i, j);
    int v = d;
    for (int c = 0; c < copies; ++c) {
      for (int a = v; a < v + size; ++a) {
        for (int b = a + 1; b < v + size; ++b) e.emplace_back(a, b);
        for (int m = 0; m < d; ++m)
          if ((bits >> m) & 1) e.emplace_back(a, m);
      }
      v += size;
    }
    if (v < 10 && uniform(rng, 0, 1)) {
      for (int m = 0; m < d; ++m)
        if (uniform(rng, 0, 1)) e.emplace_back(v, m);
      ++v;
    }
    Graph g = make_graph(v, e);
    std::vector<Vertex> mod;
    for (int m = 0; m < d; ++m) mod.push_back(m);
    ModulatedGraph mg = validate_modulator(g, mod);

    for (const auto& text : fo_corpus()) {
      Formula phi = parse_formula(text);
      const long long gamma = 2 * (metrics(phi).q_v + 1);
      for (int sample = 0; sample < 24; ++sample) {
        // label all copies alike most of the time so some type exceeds gamma
        VertexSet x(v);
        const bool uniform_label = sample % 3 != 0;
        const int pick = uniform(rng, 0, size);
        for (int c = 0; c < copies; ++c) {
          const int take = uniform_label ? pick : uniform(rng, 0, size);
          for (int a = 0; a < take; ++a) x.insert(d + c * size + a);
        }
        for (int m = 0; m < d; ++m)
          if (uniform(rng, 0, 1)) x.insert(m);
        if (v > d + copies * size && uniform(rng, 0, 1)) x.insert(v - 1);

        const bool before = evaluate(g, x, phi);
        ModulatedGraph cur = mg;
        VertexSet cur_x = x;
        while (auto r = remove_irrelevant_clique(cur, cur_x, gamma)) {
          CHECK(evaluate(r->reduced.mg.graph(), r->reduced.set, phi) == before);
          cur = r->reduced.mg;
          cur_x = r->reduced.set;
          ++removals;
        }
      }
    }
  }
  CHECK(removals > 0);
}
