#include "fairmso/formula.hpp"

#include <algorithm>
#include <climits>
#include <iterator>
#include <sstream>
#include <utility>
#include <vector>

#include "fairmso/error.hpp"
#include "program.hpp"

namespace fairmso {

namespace fx {

namespace {
NodePtr make(Op op, std::string var, std::string arg, NodePtr lhs, NodePtr rhs) {
  return std::make_shared<const Node>(Node{op, std::move(var), std::move(arg), std::move(lhs), std::move(rhs)});
}
}  // namespace

NodePtr conj(NodePtr a, NodePtr b) { return make(Op::And, {}, {}, std::move(a), std::move(b)); }
NodePtr disj(NodePtr a, NodePtr b) { return make(Op::Or, {}, {}, std::move(a), std::move(b)); }
NodePtr neg(NodePtr a) { return make(Op::Not, {}, {}, std::move(a), nullptr); }
NodePtr implies(NodePtr a, NodePtr b) { return make(Op::Implies, {}, {}, std::move(a), std::move(b)); }
NodePtr exists_v(std::string x, NodePtr body) { return make(Op::ExistsV, std::move(x), {}, std::move(body), nullptr); }
NodePtr forall_v(std::string x, NodePtr body) { return make(Op::ForallV, std::move(x), {}, std::move(body), nullptr); }
NodePtr exists_s(std::string s, NodePtr body) { return make(Op::ExistsS, std::move(s), {}, std::move(body), nullptr); }
NodePtr forall_s(std::string s, NodePtr body) { return make(Op::ForallS, std::move(s), {}, std::move(body), nullptr); }
NodePtr adj(std::string x, std::string y) { return make(Op::Adj, std::move(x), std::move(y), nullptr, nullptr); }
NodePtr eq(std::string x, std::string y) { return make(Op::Eq, std::move(x), std::move(y), nullptr, nullptr); }
NodePtr in(std::string x, std::string set) { return make(Op::In, std::move(x), std::move(set), nullptr, nullptr); }

}  // namespace fx

namespace {

const char* op_name(Op op) {
  switch (op) {
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Implies: return "implies";
    case Op::ExistsV: return "existsV";
    case Op::ForallV: return "forallV";
    case Op::ExistsS: return "existsS";
    case Op::ForallS: return "forallS";
    case Op::Adj: return "adj";
    case Op::Eq: return "eq";
    case Op::In: return "in";
  }
  return "?";
}

bool is_vertex_quantifier(Op op) { return op == Op::ExistsV || op == Op::ForallV; }
bool is_set_quantifier(Op op) { return op == Op::ExistsS || op == Op::ForallS; }

struct Token {
  enum Kind { LParen, RParen, Ident, End } kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9') || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  NodePtr parse_top() {
    NodePtr n = form();
    if (tok_.kind != Token::End) fail("unexpected token '" + tok_.text + "' after formula");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("line " + std::to_string(tok_.line) + " col " + std::to_string(tok_.column) + ": " + msg, tok_.line,
                     tok_.column);
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        step();
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
      tok_.text = "<end>";
      return;
    }
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      tok_.kind = c == '(' ? Token::LParen : Token::RParen;
      tok_.text = std::string(1, c);
      step();
      return;
    }
    if (!ident_start(c)) {
      tok_.text = std::string(1, c);
      fail("unexpected character '" + tok_.text + "'");
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) step();
    tok_.kind = Token::Ident;
    tok_.text = std::string(text_.substr(start, pos_ - start));
  }

  void step() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void expect(Token::Kind k, const char* what) {
    if (tok_.kind != k) fail(std::string("expected ") + what + ", got '" + tok_.text + "'");
    advance();
  }

  std::string ident(const char* what) {
    if (tok_.kind != Token::Ident) fail(std::string("expected ") + what + ", got '" + tok_.text + "'");
    std::string s = tok_.text;
    advance();
    return s;
  }

  bool bound(const std::vector<std::string>& scope, const std::string& name) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  std::string vertex_ref() {
    Token at = tok_;
    std::string name = ident("vertex variable");
    if (!bound(vscope_, name)) {
      tok_ = at;
      fail(bound(sscope_, name) || name == kFreeName ? "'" + name + "' is a set variable, expected a vertex"
                                                     : "unbound vertex variable '" + name + "'");
    }
    return name;
  }

  std::string set_ref() {
    Token at = tok_;
    std::string name = ident("set variable");
    if (name != kFreeName && !bound(sscope_, name)) {
      tok_ = at;
      fail(bound(vscope_, name) ? "'" + name + "' is a vertex variable, expected a set"
                                : "unbound set variable '" + name + "'");
    }
    return name;
  }

  std::string binder() {
    Token at = tok_;
    std::string name = ident("variable name");
    if (name == kFreeName) {
      tok_ = at;
      fail("'Free' is reserved");
    }
    return name;
  }

  NodePtr form() {
    expect(Token::LParen, "'('");
    Token head = tok_;
    std::string h = ident("operator");
    NodePtr out;
    if (h == "and" || h == "or" || h == "implies") {
      NodePtr a = form();
      NodePtr b = form();
      out = h == "and" ? fx::conj(a, b) : h == "or" ? fx::disj(a, b) : fx::implies(a, b);
    } else if (h == "not") {
      out = fx::neg(form());
    } else if (h == "existsV" || h == "forallV") {
      std::string x = binder();
      vscope_.push_back(x);
      NodePtr body = form();
      vscope_.pop_back();
      out = h == "existsV" ? fx::exists_v(x, body) : fx::forall_v(x, body);
    } else if (h == "existsS" || h == "forallS") {
      std::string s = binder();
      sscope_.push_back(s);
      NodePtr body = form();
      sscope_.pop_back();
      out = h == "existsS" ? fx::exists_s(s, body) : fx::forall_s(s, body);
    } else if (h == "adj" || h == "eq") {
      std::string x = vertex_ref();
      std::string y = vertex_ref();
      out = h == "adj" ? fx::adj(x, y) : fx::eq(x, y);
    } else if (h == "in") {
      std::string x = vertex_ref();
      std::string s = set_ref();
      out = fx::in(x, s);
    } else {
      tok_ = head;
      fail("unknown operator '" + h + "'");
    }
    if (tok_.kind != Token::RParen) fail("too many arguments to '" + h + "'");
    advance();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_{Token::End, {}, 1, 1};
  std::vector<std::string> vscope_;
  std::vector<std::string> sscope_;
};

class Compiler {
 public:
  Program run(const Node& root) {
    prog_.root = visit(root);
    annotate();
    return std::move(prog_);
  }

 private:
  static int lookup(const std::vector<std::pair<std::string, int>>& scope, const std::string& name) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == name) return it->second;
    return -1;
  }

  int vslot(const std::string& name) {
    int s = lookup(vscope_, name);
    if (s < 0) throw ParseError("unbound vertex variable '" + name + "'");
    return s;
  }

  int sslot(const std::string& name) {
    int s = lookup(sscope_, name);
    if (s >= 0) return s;
    if (name == kFreeName) return 0;
    throw ParseError("unbound set variable '" + name + "'");
  }

  int emit(PNode n) {
    prog_.nodes.push_back(std::move(n));
    return static_cast<int>(prog_.nodes.size()) - 1;
  }

  // Leftmost conjunct of an and-chain, if it is adj(x, y) with y bound outside x.
  int guard_for(const Node* n, const std::string& x) {
    while (n && n->op == Op::And) n = n->lhs.get();
    if (!n || n->op != Op::Adj) return -1;
    const std::string* other = nullptr;
    if (n->var == x && n->arg != x) other = &n->arg;
    if (n->arg == x && n->var != x) other = &n->var;
    if (!other) return -1;
    return lookup(vscope_, *other);
  }

  int visit(const Node& n) {
    PNode p;
    p.op = n.op;
    switch (n.op) {
      case Op::And:
      case Op::Or:
      case Op::Implies:
        p.lhs = visit(*n.lhs);
        p.rhs = visit(*n.rhs);
        break;
      case Op::Not:
        p.lhs = visit(*n.lhs);
        break;
      case Op::ExistsV:
      case Op::ForallV: {
        if (n.var == kFreeName) throw ParseError("'Free' is reserved");
        const Node* scope_body = n.lhs.get();
        if (n.op == Op::ForallV && scope_body->op == Op::Implies) scope_body = scope_body->lhs.get();
        if (n.op == Op::ExistsV || n.lhs->op == Op::Implies) p.guard = guard_for(scope_body, n.var);
        p.a = prog_.vertex_slots++;
        vscope_.emplace_back(n.var, p.a);
        p.lhs = visit(*n.lhs);
        vscope_.pop_back();
        break;
      }
      case Op::ExistsS:
      case Op::ForallS: {
        const Node* cur = &n;
        std::size_t pushed = 0;
        while (cur->op == n.op) {
          if (cur->var == kFreeName) throw ParseError("'Free' is reserved");
          int slot = prog_.set_slots++;
          p.set_slots.push_back(slot);
          sscope_.emplace_back(cur->var, slot);
          ++pushed;
          cur = cur->lhs.get();
        }
        p.lhs = visit(*cur);
        sscope_.resize(sscope_.size() - pushed);
        break;
      }
      case Op::Adj:
      case Op::Eq:
        p.a = vslot(n.var);
        p.b = vslot(n.arg);
        break;
      case Op::In:
        p.a = vslot(n.var);
        p.b = sslot(n.arg);
        break;
    }
    return emit(std::move(p));
  }

  // Children precede parents in prog_.nodes.
  void annotate() {
    const std::size_t n = prog_.nodes.size();
    // free vertex slots and free quantified set slots (Free excluded), sorted
    std::vector<std::vector<int>> free_v(n), free_s(n);
    auto unite = [](std::vector<int>& into, const std::vector<int>& from) {
      std::vector<int> u;
      std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(u));
      into = std::move(u);
    };
    for (std::size_t i = 0; i < n; ++i) {
      PNode& p = prog_.nodes[i];
      for (int c : {p.lhs, p.rhs}) {
        if (c < 0) continue;
        unite(free_v[i], free_v[c]);
        unite(free_s[i], free_s[c]);
        p.set_free = p.set_free && prog_.nodes[c].set_free;
      }
      switch (p.op) {
        case Op::Adj:
        case Op::Eq:
          free_v[i] = {std::min(p.a, p.b), std::max(p.a, p.b)};
          free_v[i].erase(std::unique(free_v[i].begin(), free_v[i].end()), free_v[i].end());
          break;
        case Op::In:
          free_v[i] = {p.a};
          if (p.b != 0) free_s[i] = {p.b};
          p.set_free = false;
          break;
        default:
          break;
      }
      if (is_vertex_quantifier(p.op)) {
        std::erase(free_v[i], p.a);
        if (p.guard >= 0) unite(free_v[i], {p.guard});
        p.memo = free_v[i].size() <= 1 && free_s[i].empty();
        p.memo_slot = free_v[i].empty() ? -1 : free_v[i].front();
      }
      if (is_set_quantifier(p.op))
        for (int slot : p.set_slots) std::erase(free_s[i], slot);
    }
  }

  Program prog_;
  std::vector<std::pair<std::string, int>> vscope_;
  std::vector<std::pair<std::string, int>> sscope_;
};

void count(const Node& n, FormulaMetrics& m) {
  if (is_vertex_quantifier(n.op)) ++m.q_v;
  if (is_set_quantifier(n.op)) ++m.q_S;
  if (n.lhs) count(*n.lhs, m);
  if (n.rhs) count(*n.rhs, m);
}

void print(const Node& n, std::ostringstream& out) {
  out << '(' << op_name(n.op);
  switch (n.op) {
    case Op::Adj:
    case Op::Eq:
    case Op::In:
      out << ' ' << n.var << ' ' << n.arg;
      break;
    case Op::ExistsV:
    case Op::ForallV:
    case Op::ExistsS:
    case Op::ForallS:
      out << ' ' << n.var << ' ';
      print(*n.lhs, out);
      break;
    case Op::Not:
      out << ' ';
      print(*n.lhs, out);
      break;
    default:
      out << ' ';
      print(*n.lhs, out);
      out << ' ';
      print(*n.rhs, out);
  }
  out << ')';
}

// 2^e * f without overflow, if it fits.
std::optional<long long> pow2_times(long long e, long long f) {
  if (e < 0 || e > 62) return std::nullopt;
  long long p = 1LL << e;
  if (f != 0 && p > LLONG_MAX / f) return std::nullopt;
  return p * f;
}

}  // namespace

Program compile(const Node& root) { return Compiler().run(root); }

Formula::Formula(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw ParseError("empty formula");
  program_ = std::make_shared<const Program>(compile(*root_));
}

Formula parse_formula(std::string_view text) { return Formula(Parser(text).parse_top()); }

std::string to_string(const Node& n) {
  std::ostringstream out;
  print(n, out);
  return out.str();
}

std::string to_string(const Formula& f) { return to_string(f.root()); }

FormulaMetrics metrics(const Node& n) {
  FormulaMetrics m;
  count(n, m);
  m.is_fo = m.q_S == 0;
  return m;
}

FormulaMetrics metrics(const Formula& f) { return metrics(f.root()); }

DerivedParams derive_params(const FormulaMetrics& m, int d, const ParamOverrides& overrides) {
  if (m.q_S > 40 || d > 30) throw ResourceLimitError("formula or modulator too large for parameter derivation");
  DerivedParams p;
  const long long two_qs = 1LL << m.q_S;
  p.tau = 2 * two_qs * m.q_v;
  const long long f = 4 * two_qs * m.q_v;
  p.theoretical_alpha = f % 2 == 0 ? f + 1 : f + 2;

  // gamma = 2 * 2^(2^d * alpha * q_S) * (q_v + 1)
  long double e = static_cast<long double>(1LL << d) * p.theoretical_alpha * m.q_S + 1;
  std::optional<long long> g;
  if (e <= 62) g = pow2_times(static_cast<long long>(e), m.q_v + 1);
  if (g) {
    p.theoretical_gamma = *g;
    p.gamma_text = std::to_string(*g);
  } else {
    p.theoretical_gamma = LLONG_MAX;
    p.gamma_exact = false;
    std::ostringstream t;
    t << "2^" << static_cast<unsigned long long>(e) << "*" << (m.q_v + 1);
    p.gamma_text = t.str();
  }

  p.alpha = p.theoretical_alpha;
  p.gamma = p.theoretical_gamma;
  if (overrides.alpha) {
    int a = *overrides.alpha;
    if (a <= 0) throw DomainError("alpha must be positive");
    if (a % 2 == 0) throw DomainError("alpha must be odd, got " + std::to_string(a));
    p.alpha = a;
    if (a < p.theoretical_alpha) p.heuristic = true;
  }
  if (overrides.gamma) {
    long long gm = *overrides.gamma;
    if (gm <= 0) throw DomainError("gamma must be positive");
    p.gamma = gm;
    p.gamma_exact = true;
    p.gamma_text = std::to_string(gm);
    if (gm < p.theoretical_gamma) p.heuristic = true;
  }
  return p;
}

}  // namespace fairmso
