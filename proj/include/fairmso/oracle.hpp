#pragma once

#include <optional>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/graph.hpp"

namespace fairmso {

inline constexpr int kDefaultOracleLimit = 15;

struct OracleConfig {
  // 0 means FAIRMSO_MAX_ORACLE_N if set, else kDefaultOracleLimit
  int max_n = 0;
  int max_witnesses = 16;
};

struct OracleResult {
  std::optional<int> k_star;
  std::vector<VertexSet> witnesses;  // in discovery order, at most max_witnesses
  long long subsets_checked = 0;
};

int oracle_limit(const OracleConfig& cfg = {});

// Some X with fair cost <= k and G |= phi(X); throws ResourceLimitError above the size limit.
std::optional<VertexSet> oracle_decision(const Graph& g, const Formula& phi, int k, const OracleConfig& cfg = {});

OracleResult oracle_min(const Graph& g, const Formula& phi, const OracleConfig& cfg = {});

}  // namespace fairmso
