#ifndef MTSYN_LTL_HPP
#define MTSYN_LTL_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mtsyn/error.hpp"
#include "mtsyn/props.hpp"

namespace mtsyn {

/// Hash-consed LTL formula. Structurally equal formulas share one node, so
/// equality and hashing are pointer-cheap and ids identify subformulas.
class Formula {
 public:
  enum class Op {
    tt, ff, prop, lnot, land, lor, implies, iff,
    next, until, weak_until, globally, finally,
  };

  Formula();  // tt

  static Formula tt();
  static Formula ff();
  static Formula prop(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula X(Formula f);
  static Formula U(Formula a, Formula b);
  static Formula W(Formula a, Formula b);
  static Formula G(Formula f);
  static Formula F(Formula f);

  /// n-ary helpers; the empty conjunction is tt, the empty disjunction ff.
  static Formula conj(const std::vector<Formula>& parts);
  static Formula disj(const std::vector<Formula>& parts);

  Op op() const;
  const std::string& name() const;  // prop only
  std::size_t arity() const;
  Formula child(std::size_t i) const;
  std::uint64_t id() const;

  bool is_literal() const;  // p or !p

  bool operator==(const Formula& o) const { return node_ == o.node_; }
  bool operator<(const Formula& o) const { return id() < o.id(); }

  struct Node;

 private:
  explicit Formula(const Node* n) : node_(n) {}
  static Formula make(Op op, std::string name, std::vector<Formula> kids);
  const Node* node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const {
    return std::hash<std::uint64_t>{}(f.id());
  }
};

std::string to_string(const Formula& f);

/// Parses `tt ff ! & | -> <-> X U W G F` syntax (also `true false && ||`).
Formula parse_ltl(std::string_view text, SourceLoc origin = {1, 1});

std::set<std::string> propositions(const Formula& f);

/// Number of distinct subformulas.
std::size_t formula_size(const Formula& f);

/// Subformulas in post-order (children before parents), each once.
std::vector<Formula> subformulas(const Formula& f);

/// Negation normal form over tt ff p !p & | X U G. Eliminates -> <-> W F.
Formula normalize(const Formula& f);

enum class Fragment {
  assumption_alpha,
  assumption_beta,
  cosafety,
  assumption_gamma,
  general,
};

std::string_view fragment_name(Fragment fr);

/// Most specific fragment of normalize(f): alpha, then beta, then
/// co-safety (G-free), then gamma, else general.
Fragment classify(const Formula& f);

// Membership predicates on normalize(f).
bool is_cosafety(const Formula& f);
bool is_alpha(const Formula& f);
bool is_beta(const Formula& f);
bool is_gamma(const Formula& f);

/// Conjuncts of a gamma assumption: invariant bodies (G beta) and
/// recurrent bodies (G F alpha). tt yields two empty lists; anything else
/// outside the fragment throws Error.
struct GammaParts {
  std::vector<Formula> invariants;
  std::vector<Formula> recurrences;
};
GammaParts split_gamma(const Formula& f);

/// Infinite trace prefix . loop^omega.
struct LassoTrace {
  std::vector<Letter> prefix;
  std::vector<Letter> loop;  // non-empty

  std::size_t period_start() const { return prefix.size(); }
  std::size_t size() const { return prefix.size() + loop.size(); }
  Letter at(std::size_t pos) const;
  /// Suffix starting at `pos`, as a lasso.
  LassoTrace suffix(std::size_t pos) const;
  /// The first `n` letters.
  std::vector<Letter> unroll(std::size_t n) const;
};

/// Finite-window satisfaction sigma_{i,j} |- f with 0 <= i <= j < |trace|.
/// G over a finite window is false; U needs its witness inside the window.
bool eval_finite(const Formula& f, const PropTable& props,
                 const std::vector<Letter>& trace, std::size_t i,
                 std::size_t j);

/// Exact infinite-trace satisfaction on a lasso.
bool eval_lasso(const Formula& f, const PropTable& props, const LassoTrace& t);

/// The trace satisfies `f` and no strict prefix does.
bool tight_sat(const Formula& f, const PropTable& props,
               const std::vector<Letter>& trace);

}  // namespace mtsyn

#endif  // MTSYN_LTL_HPP
