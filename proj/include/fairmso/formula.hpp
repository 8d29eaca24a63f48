#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace fairmso {

inline constexpr std::string_view kFreeName = "Free";

enum class Op { And, Or, Not, Implies, ExistsV, ForallV, ExistsS, ForallS, Adj, Eq, In };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

// Quantifiers: var = bound name, lhs = body. Adj/Eq: var, arg. In: var = vertex, arg = set.
struct Node {
  Op op;
  std::string var;
  std::string arg;
  NodePtr lhs;
  NodePtr rhs;
};

struct Program;  // slot-resolved form used by the evaluator

// Closed MSO1 formula over the reserved free set "Free". Immutable.
class Formula {
 public:
  Formula() = default;
  // Throws ParseError on unbound names or sort mismatches.
  explicit Formula(NodePtr root);

  const Node& root() const { return *root_; }
  NodePtr root_ptr() const { return root_; }
  const Program& program() const { return *program_; }
  bool valid() const { return root_ != nullptr; }

 private:
  NodePtr root_;
  std::shared_ptr<const Program> program_;
};

struct FormulaMetrics {
  int q_v = 0;
  int q_S = 0;
  bool is_fo = true;
};

struct ParamOverrides {
  std::optional<int> alpha;
  std::optional<long long> gamma;
};

struct DerivedParams {
  long long tau = 0;
  long long alpha = 1;
  // Saturates at LLONG_MAX when the theoretical value does not fit; see gamma_exact.
  long long gamma = 1;
  bool gamma_exact = true;
  std::string gamma_text;
  // Set when an override falls below the theoretical value.
  bool heuristic = false;
  long long theoretical_alpha = 1;
  long long theoretical_gamma = 1;
};

// s-expression grammar; ';' starts a comment running to end of line.
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);
std::string to_string(const Node& n);

FormulaMetrics metrics(const Formula& f);
FormulaMetrics metrics(const Node& n);

DerivedParams derive_params(const FormulaMetrics& m, int d, const ParamOverrides& overrides = {});

// Builders for programmatic formulas.
namespace fx {
NodePtr conj(NodePtr a, NodePtr b);
NodePtr disj(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
NodePtr implies(NodePtr a, NodePtr b);
NodePtr exists_v(std::string x, NodePtr body);
NodePtr forall_v(std::string x, NodePtr body);
NodePtr exists_s(std::string s, NodePtr body);
NodePtr forall_s(std::string s, NodePtr body);
NodePtr adj(std::string x, std::string y);
NodePtr eq(std::string x, std::string y);
NodePtr in(std::string x, std::string set);
}  // namespace fx

}  // namespace fairmso
