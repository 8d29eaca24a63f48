#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/ilp.hpp"
#include "fairmso/presets.hpp"
#include "fairmso/shapes.hpp"

namespace fairmso {

enum class CoherencePolicy { CoherentOnly, ReportSkipped };

struct SolveConfig {
  int alpha = 3;
  long long gamma = 6;
  PatternFilter filter;
  CoherencePolicy coherence = CoherencePolicy::CoherentOnly;
  long long max_shapes = 50'000'000;
  int jobs = 1;
  // called for every shape whose formula value is requested, in enumeration order
  std::function<void(const Shape&, bool)> on_shape;
};

struct SolveReport {
  std::optional<FairSolution> answer;
  std::optional<int> k_star;
  long long shapes_enumerated = 0;
  long long shapes_evaluated = 0;
  long long shapes_satisfying = 0;
  long long shapes_incoherent_skipped = 0;
  long long ilp_feasible = 0;
  long long verification_failures = 0;
  // (k, feasible) for every decision query, in query order
  std::vector<std::pair<int, bool>> decisions;
};

// Holds the shape evaluation cache so repeated decisions on one instance share work.
class ShapeSolver {
 public:
  ShapeSolver(const ModulatedGraph& mg, const Formula& phi, SolveConfig cfg);

  SolveReport decide(int k);
  SolveReport minimize();

 private:
  struct Outcome;
  Outcome run_nt_star(std::uint32_t nt_star, int k, long long shape_budget, const std::atomic<long long>& cutoff);
  bool cached_evaluate(const Shape& shp, Outcome& out);
  void decide_into(int k, SolveReport& rep);

  const ModulatedGraph& mg_;
  Formula phi_;
  SolveConfig cfg_;
  Graph modulator_graph_;
  std::map<Shape, bool> cache_;
  std::mutex cache_mutex_;
};

SolveReport solve_decision(const ModulatedGraph& mg, const Formula& phi, int k, const SolveConfig& cfg);
SolveReport solve_min(const ModulatedGraph& mg, const Formula& phi, const SolveConfig& cfg);

}  // namespace fairmso
