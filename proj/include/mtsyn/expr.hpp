#ifndef MTSYN_EXPR_HPP
#define MTSYN_EXPR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mtsyn/error.hpp"
#include "mtsyn/props.hpp"

namespace mtsyn {

enum class Kind { integer, boolean };

std::string_view kind_name(Kind k);

/// A typed monitor variable. Parameters are variables that no action may
/// assign; their initial value is the parameter binding.
struct VarDecl {
  std::string name;
  Kind kind = Kind::integer;
  std::int64_t initial = 0;
  bool parameter = false;

  bool operator==(const VarDecl&) const = default;
};

struct Value {
  Kind kind = Kind::integer;
  std::int64_t raw = 0;

  static Value integer(std::int64_t v) { return {Kind::integer, v}; }
  static Value boolean(bool b) { return {Kind::boolean, b ? 1 : 0}; }

  std::int64_t as_int() const;
  bool as_bool() const;

  bool operator==(const Value&) const = default;
};

/// Variable values indexed by declaration slot.
using Valuation = std::vector<Value>;

Valuation initial_valuation(const std::vector<VarDecl>& vars);

std::string format_value(const Value& v);

/// Immutable expression tree over integer/boolean literals, variable slots
/// and input-membership atoms. Subtrees are shared, never copied.
class Expr {
 public:
  enum class Op {
    int_lit, bool_lit, var, member,
    neg, add, sub, mul, div,
    eq, ne, lt, le, gt, ge,
    land, lor, lnot,
    ite,
  };

  Expr();  // boolean literal true

  static Expr integer(std::int64_t v);
  static Expr boolean(bool b);
  static Expr var(std::size_t slot);
  /// Membership atom in(p) for input proposition index `prop`.
  static Expr member(std::size_t prop);
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr ite(Expr cond, Expr then_e, Expr else_e);

  static Expr conj(const std::vector<Expr>& parts);
  static Expr disj(const std::vector<Expr>& parts);

  Op op() const;
  std::int64_t literal() const;  // int_lit, bool_lit, var slot, member prop
  std::size_t arity() const;
  const Expr& child(std::size_t i) const;

  /// Evaluates against an input event and a valuation.
  /// Throws EvalError on kind mismatch, bad slot, or division by zero.
  Value eval(Letter event, const Valuation& val) const;

  /// Number of distinct nodes (shared subtrees counted once).
  std::size_t dag_size() const;

  bool is_true_literal() const;
  bool is_false_literal() const;

  bool operator==(const Expr& other) const;

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Static kind of `e` under `vars`; throws Error naming the offending node.
Kind check_kind(const Expr& e, const std::vector<VarDecl>& vars,
                std::size_t num_inputs);

struct ExprNames {
  std::vector<std::string> vars;
  std::vector<std::string> inputs;
};

/// Prints in the concrete guard syntax accepted by parse_expr.
std::string to_string(const Expr& e, const ExprNames& names);

/// Simultaneous assignment list: every right-hand side reads the pre-state.
struct Assignment {
  std::size_t slot = 0;
  Expr value;

  bool operator==(const Assignment&) const = default;
};

using Action = std::vector<Assignment>;

Valuation apply_action(const Action& a, Letter event, const Valuation& val);

/// Action resetting every non-parameter variable to its initial value.
Action reset_action(const std::vector<VarDecl>& vars);

std::string to_string(const Action& a, const ExprNames& names);

void check_action(const Action& a, const std::vector<VarDecl>& vars,
                  std::size_t num_inputs);

/// Names visible to the expression parser.
struct ExprScope {
  const std::vector<VarDecl>* vars = nullptr;
  const std::vector<std::string>* inputs = nullptr;
};

Expr parse_expr(std::string_view text, const ExprScope& scope,
                SourceLoc origin = {1, 1});
Action parse_action(std::string_view text, const ExprScope& scope,
                    SourceLoc origin = {1, 1});

}  // namespace mtsyn

#endif  // MTSYN_EXPR_HPP
