#include "mtsyn/expr.hpp"

#include <unordered_set>

#include "expr_parser.hpp"

namespace mtsyn {

std::string_view kind_name(Kind k) {
  return k == Kind::integer ? "int" : "bool";
}

std::int64_t Value::as_int() const {
  if (kind != Kind::integer) throw EvalError("expected an integer value");
  return raw;
}

bool Value::as_bool() const {
  if (kind != Kind::boolean) throw EvalError("expected a boolean value");
  return raw != 0;
}

Valuation initial_valuation(const std::vector<VarDecl>& vars) {
  Valuation v;
  v.reserve(vars.size());
  for (const auto& d : vars) v.push_back(Value{d.kind, d.initial});
  return v;
}

std::string format_value(const Value& v) {
  if (v.kind == Kind::boolean) return v.raw ? "true" : "false";
  return std::to_string(v.raw);
}

struct Expr::Node {
  Op op;
  std::int64_t literal = 0;
  std::vector<Expr> kids;
};

Expr::Expr() : Expr(boolean(true)) {}

Expr Expr::integer(std::int64_t v) {
  return Expr(std::make_shared<const Node>(Node{Op::int_lit, v, {}}));
}

Expr Expr::boolean(bool b) {
  return Expr(std::make_shared<const Node>(Node{Op::bool_lit, b ? 1 : 0, {}}));
}

Expr Expr::var(std::size_t slot) {
  return Expr(std::make_shared<const Node>(
      Node{Op::var, static_cast<std::int64_t>(slot), {}}));
}

Expr Expr::member(std::size_t prop) {
  return Expr(std::make_shared<const Node>(
      Node{Op::member, static_cast<std::int64_t>(prop), {}}));
}

Expr Expr::unary(Op op, Expr operand) {
  return Expr(std::make_shared<const Node>(Node{op, 0, {std::move(operand)}}));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(
      Node{op, 0, {std::move(lhs), std::move(rhs)}}));
}

Expr Expr::ite(Expr cond, Expr then_e, Expr else_e) {
  return Expr(std::make_shared<const Node>(
      Node{Op::ite, 0, {std::move(cond), std::move(then_e), std::move(else_e)}}));
}

Expr Expr::conj(const std::vector<Expr>& parts) {
  Expr acc = boolean(true);
  bool first = true;
  for (const auto& p : parts) {
    if (p.is_true_literal()) continue;
    if (p.is_false_literal()) return p;
    acc = first ? p : binary(Op::land, acc, p);
    first = false;
  }
  return acc;
}

Expr Expr::disj(const std::vector<Expr>& parts) {
  Expr acc = boolean(false);
  bool first = true;
  for (const auto& p : parts) {
    if (p.is_false_literal()) continue;
    if (p.is_true_literal()) return p;
    acc = first ? p : binary(Op::lor, acc, p);
    first = false;
  }
  return acc;
}

Expr::Op Expr::op() const { return node_->op; }
std::int64_t Expr::literal() const { return node_->literal; }
std::size_t Expr::arity() const { return node_->kids.size(); }
const Expr& Expr::child(std::size_t i) const { return node_->kids.at(i); }

bool Expr::is_true_literal() const {
  return node_->op == Op::bool_lit && node_->literal != 0;
}
bool Expr::is_false_literal() const {
  return node_->op == Op::bool_lit && node_->literal == 0;
}

bool Expr::operator==(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->op != other.node_->op || node_->literal != other.node_->literal ||
      node_->kids.size() != other.node_->kids.size())
    return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (!(node_->kids[i] == other.node_->kids[i])) return false;
  return true;
}

std::size_t Expr::dag_size() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& k : n->kids) stack.push_back(k.node_.get());
  }
  return seen.size();
}

Value Expr::eval(Letter event, const Valuation& val) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::int_lit:
      return Value::integer(n.literal);
    case Op::bool_lit:
      return Value::boolean(n.literal != 0);
    case Op::var: {
      auto slot = static_cast<std::size_t>(n.literal);
      if (slot >= val.size())
        throw EvalError("undeclared variable slot " + std::to_string(slot));
      return val[slot];
    }
    case Op::member:
      return Value::boolean((event & bit(static_cast<std::size_t>(n.literal))) != 0);
    case Op::neg:
      return Value::integer(-n.kids[0].eval(event, val).as_int());
    case Op::lnot:
      return Value::boolean(!n.kids[0].eval(event, val).as_bool());
    case Op::land:
      return Value::boolean(n.kids[0].eval(event, val).as_bool() &&
                            n.kids[1].eval(event, val).as_bool());
    case Op::lor:
      return Value::boolean(n.kids[0].eval(event, val).as_bool() ||
                            n.kids[1].eval(event, val).as_bool());
    case Op::ite:
      return n.kids[0].eval(event, val).as_bool() ? n.kids[1].eval(event, val)
                                                  : n.kids[2].eval(event, val);
    case Op::eq:
    case Op::ne: {
      Value a = n.kids[0].eval(event, val);
      Value b = n.kids[1].eval(event, val);
      if (a.kind != b.kind) throw EvalError("comparison of mixed kinds");
      return Value::boolean((a.raw == b.raw) == (n.op == Op::eq));
    }
    default:
      break;
  }
  std::int64_t a = n.kids[0].eval(event, val).as_int();
  std::int64_t b = n.kids[1].eval(event, val).as_int();
  switch (n.op) {
    case Op::add: return Value::integer(a + b);
    case Op::sub: return Value::integer(a - b);
    case Op::mul: return Value::integer(a * b);
    case Op::div:
      if (b == 0) throw EvalError("division by zero");
      return Value::integer(a / b);  // truncates toward zero
    case Op::lt: return Value::boolean(a < b);
    case Op::le: return Value::boolean(a <= b);
    case Op::gt: return Value::boolean(a > b);
    case Op::ge: return Value::boolean(a >= b);
    default:
      throw EvalError("malformed expression");
  }
}

Kind check_kind(const Expr& e, const std::vector<VarDecl>& vars,
                std::size_t num_inputs) {
  using Op = Expr::Op;
  auto need = [&](const Expr& sub, Kind k, const char* what) {
    if (check_kind(sub, vars, num_inputs) != k)
      throw Error(std::string(what) + " expects " +
                  std::string(kind_name(k)) + " operands");
  };
  switch (e.op()) {
    case Op::int_lit:
      return Kind::integer;
    case Op::bool_lit:
      return Kind::boolean;
    case Op::var: {
      auto slot = static_cast<std::size_t>(e.literal());
      if (slot >= vars.size()) throw Error("undeclared variable");
      return vars[slot].kind;
    }
    case Op::member:
      if (static_cast<std::size_t>(e.literal()) >= num_inputs)
        throw Error("membership atom over a non-input proposition");
      return Kind::boolean;
    case Op::neg:
      need(e.child(0), Kind::integer, "negation");
      return Kind::integer;
    case Op::add: case Op::sub: case Op::mul: case Op::div:
      need(e.child(0), Kind::integer, "arithmetic");
      need(e.child(1), Kind::integer, "arithmetic");
      return Kind::integer;
    case Op::lt: case Op::le: case Op::gt: case Op::ge:
      need(e.child(0), Kind::integer, "ordering comparison");
      need(e.child(1), Kind::integer, "ordering comparison");
      return Kind::boolean;
    case Op::eq: case Op::ne:
      if (check_kind(e.child(0), vars, num_inputs) !=
          check_kind(e.child(1), vars, num_inputs))
        throw Error("equality between different kinds");
      return Kind::boolean;
    case Op::land: case Op::lor:
      need(e.child(0), Kind::boolean, "connective");
      need(e.child(1), Kind::boolean, "connective");
      return Kind::boolean;
    case Op::lnot:
      need(e.child(0), Kind::boolean, "negation");
      return Kind::boolean;
    case Op::ite: {
      need(e.child(0), Kind::boolean, "ite condition");
      Kind k = check_kind(e.child(1), vars, num_inputs);
      if (check_kind(e.child(2), vars, num_inputs) != k)
        throw Error("ite branches of different kinds");
      return k;
    }
  }
  throw Error("malformed expression");
}

namespace {

int precedence(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::lor: return 1;
    case Op::land: return 2;
    case Op::eq: case Op::ne: case Op::lt: case Op::le: case Op::gt: case Op::ge:
      return 3;
    case Op::add: case Op::sub: return 4;
    case Op::mul: case Op::div: return 5;
    case Op::neg: case Op::lnot: return 6;
    default: return 7;
  }
}

const char* symbol(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::add: return "+";
    case Op::sub: return "-";
    case Op::mul: return "*";
    case Op::div: return "/";
    case Op::eq: return "==";
    case Op::ne: return "!=";
    case Op::lt: return "<";
    case Op::le: return "<=";
    case Op::gt: return ">";
    case Op::ge: return ">=";
    case Op::land: return "&&";
    case Op::lor: return "||";
    case Op::neg: return "-";
    case Op::lnot: return "!";
    default: return "?";
  }
}

void print(const Expr& e, const ExprNames& names, std::string& out) {
  using Op = Expr::Op;
  auto sub = [&](const Expr& c, bool parens) {
    if (parens) out += '(';
    print(c, names, out);
    if (parens) out += ')';
  };
  switch (e.op()) {
    case Op::int_lit:
      if (e.literal() < 0) {
        out += "(" + std::to_string(e.literal()) + ")";
      } else {
        out += std::to_string(e.literal());
      }
      return;
    case Op::bool_lit:
      out += e.literal() ? "true" : "false";
      return;
    case Op::var: {
      auto slot = static_cast<std::size_t>(e.literal());
      out += slot < names.vars.size() ? names.vars[slot]
                                      : "$" + std::to_string(slot);
      return;
    }
    case Op::member: {
      auto p = static_cast<std::size_t>(e.literal());
      out += "in(";
      out += p < names.inputs.size() ? names.inputs[p] : "$" + std::to_string(p);
      out += ")";
      return;
    }
    case Op::neg:
    case Op::lnot:
      out += symbol(e.op());
      sub(e.child(0), precedence(e.child(0).op()) < 6);
      return;
    case Op::ite:
      out += "ite(";
      print(e.child(0), names, out);
      out += ", ";
      print(e.child(1), names, out);
      out += ", ";
      print(e.child(2), names, out);
      out += ")";
      return;
    default:
      break;
  }
  int p = precedence(e.op());
  bool comparison = p == 3;
  // Left-associative: the left operand may share the level (except for the
  // non-associative comparisons), the right operand must bind tighter.
  int lp = precedence(e.child(0).op());
  int rp = precedence(e.child(1).op());
  sub(e.child(0), comparison ? lp <= p : lp < p);
  out += ' ';
  out += symbol(e.op());
  out += ' ';
  sub(e.child(1), rp <= p);
}

}  // namespace

std::string to_string(const Expr& e, const ExprNames& names) {
  std::string out;
  print(e, names, out);
  return out;
}

Valuation apply_action(const Action& a, Letter event, const Valuation& val) {
  if (a.empty()) return val;
  std::vector<Value> fresh;
  fresh.reserve(a.size());
  for (const auto& asg : a) fresh.push_back(asg.value.eval(event, val));
  Valuation next = val;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].slot >= next.size()) throw EvalError("assignment to undeclared variable");
    next[a[i].slot] = fresh[i];
  }
  return next;
}

Action reset_action(const std::vector<VarDecl>& vars) {
  Action a;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].parameter) continue;
    a.push_back({i, vars[i].kind == Kind::boolean
                        ? Expr::boolean(vars[i].initial != 0)
                        : Expr::integer(vars[i].initial)});
  }
  return a;
}

std::string to_string(const Action& a, const ExprNames& names) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += "; ";
    out += a[i].slot < names.vars.size() ? names.vars[a[i].slot] : "$";
    out += " := ";
    out += to_string(a[i].value, names);
  }
  return out;
}

void check_action(const Action& a, const std::vector<VarDecl>& vars,
                  std::size_t num_inputs) {
  std::unordered_set<std::size_t> assigned;
  for (const auto& asg : a) {
    if (asg.slot >= vars.size()) throw Error("assignment to undeclared variable");
    const VarDecl& d = vars[asg.slot];
    if (d.parameter) throw Error("parameter '" + d.name + "' cannot be assigned");
    if (!assigned.insert(asg.slot).second)
      throw Error("variable '" + d.name + "' assigned twice in one action");
    if (check_kind(asg.value, vars, num_inputs) != d.kind)
      throw Error("assignment to '" + d.name + "' has the wrong kind");
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {
namespace {

class ExprParser {
 public:
  ExprParser(Lexer& lex, const ExprScope& scope) : lex_(lex), scope_(scope) {}

  Expr parse() { return parse_or(); }

 private:
  using Op = Expr::Op;

  Expr parse_or() {
    Expr e = parse_and();
    while (lex_.accept("||")) e = Expr::binary(Op::lor, e, parse_and());
    return e;
  }
  Expr parse_and() {
    Expr e = parse_cmp();
    while (lex_.accept("&&")) e = Expr::binary(Op::land, e, parse_cmp());
    return e;
  }
  Expr parse_cmp() {
    Expr e = parse_add();
    static const std::pair<const char*, Op> ops[] = {
        {"==", Op::eq}, {"=", Op::eq}, {"!=", Op::ne}, {"<=", Op::le},
        {">=", Op::ge}, {"<", Op::lt}, {">", Op::gt}};
    for (const auto& [sym, op] : ops) {
      if (lex_.accept(sym)) return Expr::binary(op, e, parse_add());
    }
    return e;
  }
  Expr parse_add() {
    Expr e = parse_mul();
    for (;;) {
      if (lex_.accept("+")) e = Expr::binary(Op::add, e, parse_mul());
      else if (lex_.accept("-")) e = Expr::binary(Op::sub, e, parse_mul());
      else return e;
    }
  }
  Expr parse_mul() {
    Expr e = parse_unary();
    for (;;) {
      if (lex_.accept("*")) e = Expr::binary(Op::mul, e, parse_unary());
      else if (lex_.accept("/")) e = Expr::binary(Op::div, e, parse_unary());
      else return e;
    }
  }
  Expr parse_unary() {
    if (lex_.accept("!")) return Expr::unary(Op::lnot, parse_unary());
    if (lex_.is("-")) {
      lex_.next();
      if (lex_.peek().kind == Tok::number) return Expr::integer(-number());
      return Expr::unary(Op::neg, parse_unary());
    }
    return parse_primary();
  }
  std::int64_t number() {
    Token t = lex_.next();
    try {
      return std::stoll(t.text);
    } catch (const std::exception&) {
      throw ParseError("integer literal out of range", t.loc);
    }
  }
  Expr parse_primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::number) return Expr::integer(number());
    if (lex_.accept("(")) {
      Expr e = parse_or();
      lex_.expect(")");
      return e;
    }
    if (t.kind != Tok::ident)
      throw ParseError("expected expression but found " + Lexer::describe(t),
                       t.loc);
    Token id = lex_.next();
    if (id.text == "true") return Expr::boolean(true);
    if (id.text == "false") return Expr::boolean(false);
    if (id.text == "in" && lex_.is("(")) {
      lex_.next();
      Token p = lex_.peek();
      std::string name = lex_.expect_ident();
      lex_.expect(")");
      if (scope_.inputs) {
        for (std::size_t i = 0; i < scope_.inputs->size(); ++i)
          if ((*scope_.inputs)[i] == name) return Expr::member(i);
      }
      throw ParseError("'" + name + "' is not an input proposition", p.loc);
    }
    if (id.text == "ite" && lex_.is("(")) {
      lex_.next();
      Expr c = parse_or();
      lex_.expect(",");
      Expr a = parse_or();
      lex_.expect(",");
      Expr b = parse_or();
      lex_.expect(")");
      return Expr::ite(c, a, b);
    }
    if (scope_.vars) {
      for (std::size_t i = 0; i < scope_.vars->size(); ++i)
        if ((*scope_.vars)[i].name == id.text) return Expr::var(i);
    }
    throw ParseError("undeclared variable '" + id.text + "'", id.loc);
  }

  Lexer& lex_;
  const ExprScope& scope_;
};

}  // namespace

Expr parse_expr(Lexer& lex, const ExprScope& scope) {
  return ExprParser(lex, scope).parse();
}

Action parse_action(Lexer& lex, const ExprScope& scope) {
  Action a;
  while (!lex.at_end() && !lex.is("}")) {
    Token id = lex.peek();
    std::string name = lex.expect_ident();
    lex.expect(":=");
    std::size_t slot = 0;
    bool found = false;
    if (scope.vars) {
      for (std::size_t i = 0; i < scope.vars->size(); ++i)
        if ((*scope.vars)[i].name == name) {
          slot = i;
          found = true;
        }
    }
    if (!found) throw ParseError("undeclared variable '" + name + "'", id.loc);
    a.push_back({slot, parse_expr(lex, scope)});
    if (!lex.accept(";")) break;
  }
  return a;
}

}  // namespace detail

Expr parse_expr(std::string_view text, const ExprScope& scope, SourceLoc origin) {
  detail::Lexer lex(text, origin);
  Expr e = detail::parse_expr(lex, scope);
  lex.expect_end();
  return e;
}

Action parse_action(std::string_view text, const ExprScope& scope,
                    SourceLoc origin) {
  detail::Lexer lex(text, origin);
  Action a = detail::parse_action(lex, scope);
  lex.expect_end();
  return a;
}

}  // namespace mtsyn
