#pragma once

#include <span>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/graph.hpp"

namespace fairmso {

enum class Truth : unsigned char { False = 0, True = 1, Unknown = 2 };

// G |= phi(Free := free_set).
bool evaluate(const Graph& g, const VertexSet& free_set, const Formula& phi);

// Values of subformulas that mention no set, kept across evaluations of one formula on one graph.
class EvaluationCache {
 public:
  EvaluationCache(const Graph& g, const Formula& phi);
  bool built_for(const Graph& g, const Formula& phi) const;

 private:
  friend class Evaluator;
  const Graph* graph_;
  const void* program_;
  std::vector<std::vector<unsigned char>> values_;
};

// Kleene evaluation with Free only partly decided. A definite answer holds for
// every completion of the Unknown entries.
Truth evaluate_partial(const Graph& g, std::span<const Truth> free_state, const Formula& phi);
Truth evaluate_partial(const Graph& g, std::span<const Truth> free_state, const Formula& phi,
                       EvaluationCache& cache);

}  // namespace fairmso
