#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairmso/formula.hpp"
#include "fairmso/shapes.hpp"

namespace fairmso {

// Subset of the naturals that is finite (values = members) or cofinite (values = excluded).
struct CountSet {
  bool cofinite = false;
  std::vector<int> values;  // sorted, distinct

  static CountSet naturals() { return {true, {}}; }
  static CountSet finite(std::vector<int> members);
  static CountSet co_finite(std::vector<int> excluded);
  // "N", "0,1,3", "coN:0,2"
  static CountSet parse(std::string_view text);

  bool contains(int x) const;
  bool is_naturals() const { return cofinite && values.empty(); }
  std::string to_string() const;
};

enum class ProblemKind { VC, FVS, OCT, DS, SigmaRho };

struct Problem {
  ProblemKind kind = ProblemKind::VC;
  CountSet sigma;
  CountSet rho;

  static Problem vc() { return {ProblemKind::VC, {}, {}}; }
  static Problem fvs() { return {ProblemKind::FVS, {}, {}}; }
  static Problem oct() { return {ProblemKind::OCT, {}, {}}; }
  static Problem ds() { return {ProblemKind::DS, {}, {}}; }
  // Throws DomainError unless sigma is finite, or sigma = N and rho is cofinite.
  static Problem sigma_rho(CountSet sigma, CountSet rho);
  std::string name() const;
};

// "vc", "fvs", "oct", "ds"; "sigma-rho" needs the sets separately.
ProblemKind parse_problem_kind(std::string_view name);

Formula preset_formula(const Problem& p);

PatternFilter preset_pattern_filter(const Problem& p);

// Smallest odd alpha that keeps every filtered pattern strictly thin or fat.
int recommended_alpha(const PatternFilter& f);
// 2(q_v + 1), the set-quantifier-free value.
long long recommended_gamma(const FormulaMetrics& m);

}  // namespace fairmso
