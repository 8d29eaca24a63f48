#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairmso/graph.hpp"
#include "fairmso/shapes.hpp"

namespace fairmso {

struct LinearTerm {
  int var;
  long long coef;
};

enum class Sense { Eq, Le, Ge };

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Eq;
  long long rhs = 0;
};

struct Variable {
  std::string name;
  long long lo = 0;
  long long hi = 0;
};

// Pure feasibility program over bounded integers.
struct IntegerProgram {
  std::vector<Variable> vars;
  std::vector<Constraint> rows;

  int add_var(std::string name, long long lo, long long hi);
  bool satisfied_by(const std::vector<long long>& x) const;
};

using Assignment = std::vector<long long>;

// Exact: depth-first branching with interval propagation. nullopt proves infeasibility.
std::optional<Assignment> solve_ilp(const IntegerProgram& ip);

// Max over clique vertices of |N(v) ∩ X| for any X matching sp on a clique with the given
// part sizes, with modulator selection nt_star. Throws DomainError for inadmissible sp.
int clique_fc(const std::vector<int>& part_sizes, const Pattern& sp, std::uint32_t nt_star, int alpha);
int clique_fc(const ModulatedGraph& mg, int clique, const Pattern& sp, std::uint32_t nt_star, int alpha);

// Cliques of one column type sharing the same admissible set S.
struct CliqueGroup {
  int column = 0;
  int index_in_column = 0;
  std::vector<int> admissible;  // indices into CliquePartition::patterns[column], ascending
  std::vector<int> cliques;     // ascending
};

struct CliquePartition {
  std::vector<ColumnType> columns;          // column types present in G, ascending
  std::vector<std::vector<Pattern>> patterns;  // per column, filtered, ascending
  std::vector<CliqueGroup> groups;          // by (column, S)
  std::vector<int> group_of_clique;
};

CliquePartition partition_by_S(const ModulatedGraph& mg, std::uint32_t nt_star, int alpha, int k,
                               const PatternFilter& filter = {});

struct VarKey {
  int group;
  int pattern;  // index into patterns[column]
};

struct ILPModel {
  IntegerProgram program;
  std::vector<VarKey> keys;  // one per variable
  // |nT* ∩ N(v)| for each modulator position
  std::vector<int> modulator_constants;
};

// Constraints (1)-(4). Throws DomainError for an incoherent shape.
ILPModel build_model(const ModulatedGraph& mg, const Shape& shp, const CliquePartition& part, int k, int alpha,
                     long long gamma);

struct FairSolution {
  VertexSet x;
  int fair_cost = 0;
  Shape shape;
};

FairSolution extract_solution(const Assignment& a, const ILPModel& model, const Shape& shp,
                              const CliquePartition& part, const ModulatedGraph& mg, int alpha);

std::string export_lp(const IntegerProgram& ip);
std::string export_lp(const ILPModel& model);

}  // namespace fairmso
