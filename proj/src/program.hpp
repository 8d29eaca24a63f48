#pragma once

#include <vector>

#include "fairmso/formula.hpp"

namespace fairmso {

// Variables resolved to slots; each quantifier owns a fresh slot. Set slot 0 is Free.
struct PNode {
  Op op = Op::And;
  int a = -1;
  int b = -1;
  int lhs = -1;
  int rhs = -1;
  // vertex quantifiers: range restricted to N(slot guard)
  int guard = -1;
  // set quantifiers: a block of directly nested quantifiers of the same kind
  std::vector<int> set_slots;
  // vertex quantifiers: the value depends on at most one outer vertex slot (memo_slot,
  // -1 for none) and on no quantified set, so it can be cached per vertex
  bool memo = false;
  int memo_slot = -1;
  // no membership test below this node
  bool set_free = true;
};

struct Program {
  std::vector<PNode> nodes;
  int root = -1;
  int vertex_slots = 0;
  int set_slots = 1;
};

Program compile(const Node& root);

}  // namespace fairmso
