#include "mtsyn/ltl.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "lexer.hpp"

namespace mtsyn {

struct Formula::Node {
  std::uint64_t id;
  Op op;
  std::string name;
  std::vector<Formula> kids;
};

namespace {

struct NodeKey {
  Formula::Op op;
  std::string name;
  std::vector<std::uint64_t> kids;

  bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = std::hash<int>{}(static_cast<int>(k.op));
    h ^= std::hash<std::string>{}(k.name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    for (auto c : k.kids)
      h ^= std::hash<std::uint64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Nodes live for the whole process; formulas are small and heavily shared.
struct Registry {
  std::mutex mu;
  std::unordered_map<NodeKey, std::unique_ptr<Formula::Node>, NodeKeyHash> table;
  std::uint64_t next_id = 0;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  NodeKey key{op, name, {}};
  for (const auto& k : kids) key.kids.push_back(k.id());
  Registry& r = registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.table.find(key);
  if (it != r.table.end()) return Formula(it->second.get());
  auto node = std::make_unique<Node>(Node{r.next_id++, op, std::move(name), std::move(kids)});
  const Node* raw = node.get();
  r.table.emplace(std::move(key), std::move(node));
  return Formula(raw);
}

Formula::Formula() : Formula(tt()) {}
Formula Formula::tt() { return make(Op::tt, "", {}); }
Formula Formula::ff() { return make(Op::ff, "", {}); }
Formula Formula::prop(std::string name) { return make(Op::prop, std::move(name), {}); }
Formula Formula::neg(Formula f) { return make(Op::lnot, "", {f}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::land, "", {a, b}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::lor, "", {a, b}); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::implies, "", {a, b}); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::iff, "", {a, b}); }
Formula Formula::X(Formula f) { return make(Op::next, "", {f}); }
Formula Formula::U(Formula a, Formula b) { return make(Op::until, "", {a, b}); }
Formula Formula::W(Formula a, Formula b) { return make(Op::weak_until, "", {a, b}); }
Formula Formula::G(Formula f) { return make(Op::globally, "", {f}); }
Formula Formula::F(Formula f) { return make(Op::finally, "", {f}); }

Formula Formula::conj(const std::vector<Formula>& parts) {
  if (parts.empty()) return tt();
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj(const std::vector<Formula>& parts) {
  if (parts.empty()) return ff();
  Formula acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Formula::Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
std::size_t Formula::arity() const { return node_->kids.size(); }
Formula Formula::child(std::size_t i) const { return node_->kids.at(i); }
std::uint64_t Formula::id() const { return node_->id; }

bool Formula::is_literal() const {
  return op() == Op::prop || (op() == Op::lnot && child(0).op() == Op::prop);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Formula::Op op) {
  using Op = Formula::Op;
  switch (op) {
    case Op::iff: return 1;
    case Op::implies: return 2;
    case Op::lor: return 3;
    case Op::land: return 4;
    case Op::until: case Op::weak_until: return 5;
    case Op::lnot: case Op::next: case Op::globally: case Op::finally: return 6;
    default: return 7;
  }
}

void print(const Formula& f, std::string& out) {
  using Op = Formula::Op;
  auto sub = [&](const Formula& c, bool parens) {
    if (parens) out += '(';
    print(c, out);
    if (parens) out += ')';
  };
  switch (f.op()) {
    case Op::tt: out += "tt"; return;
    case Op::ff: out += "ff"; return;
    case Op::prop: out += f.name(); return;
    case Op::lnot: out += "!"; sub(f.child(0), precedence(f.child(0).op()) < 6); return;
    case Op::next: out += "X "; sub(f.child(0), precedence(f.child(0).op()) < 6); return;
    case Op::globally: out += "G "; sub(f.child(0), precedence(f.child(0).op()) < 6); return;
    case Op::finally: out += "F "; sub(f.child(0), precedence(f.child(0).op()) < 6); return;
    default: break;
  }
  const char* sym = "";
  bool right_assoc = false;
  switch (f.op()) {
    case Op::land: sym = " & "; break;
    case Op::lor: sym = " | "; break;
    case Op::implies: sym = " -> "; right_assoc = true; break;
    case Op::iff: sym = " <-> "; break;
    case Op::until: sym = " U "; right_assoc = true; break;
    case Op::weak_until: sym = " W "; right_assoc = true; break;
    default: break;
  }
  int p = precedence(f.op());
  int lp = precedence(f.child(0).op());
  int rp = precedence(f.child(1).op());
  bool left_parens = right_assoc ? lp <= p : lp < p;
  bool right_parens = right_assoc ? rp < p : rp <= p;
  // Keep until-chains of mixed kinds unambiguous.
  if (p == 5 && rp == 5 && f.child(1).op() != f.op()) right_parens = true;
  sub(f.child(0), left_parens);
  out += sym;
  sub(f.child(1), right_parens);
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class LtlParser {
 public:
  explicit LtlParser(detail::Lexer& lex) : lex_(lex) {}

  Formula parse() { return parse_iff(); }

 private:
  Formula parse_iff() {
    Formula f = parse_implies();
    while (lex_.accept("<->")) f = Formula::iff(f, parse_implies());
    return f;
  }
  Formula parse_implies() {
    Formula f = parse_or();
    if (lex_.accept("->")) return Formula::implies(f, parse_implies());
    return f;
  }
  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.accept("|") || lex_.accept("||")) f = Formula::disj(f, parse_and());
    return f;
  }
  Formula parse_and() {
    Formula f = parse_until();
    while (lex_.accept("&") || lex_.accept("&&")) f = Formula::conj(f, parse_until());
    return f;
  }
  Formula parse_until() {
    Formula f = parse_unary();
    if (lex_.is_ident("U")) {
      lex_.next();
      return Formula::U(f, parse_until());
    }
    if (lex_.is_ident("W")) {
      lex_.next();
      return Formula::W(f, parse_until());
    }
    return f;
  }
  Formula parse_unary() {
    if (lex_.accept("!")) return Formula::neg(parse_unary());
    if (lex_.is_ident("X")) { lex_.next(); return Formula::X(parse_unary()); }
    if (lex_.is_ident("G")) { lex_.next(); return Formula::G(parse_unary()); }
    if (lex_.is_ident("F")) { lex_.next(); return Formula::F(parse_unary()); }
    return parse_atom();
  }
  Formula parse_atom() {
    if (lex_.accept("(")) {
      Formula f = parse_iff();
      lex_.expect(")");
      return f;
    }
    const detail::Token& t = lex_.peek();
    if (t.kind != detail::Tok::ident)
      throw ParseError("expected formula but found " + detail::Lexer::describe(t),
                       t.loc);
    std::string word = lex_.next().text;
    if (word == "tt" || word == "true") return Formula::tt();
    if (word == "ff" || word == "false") return Formula::ff();
    if (word == "U" || word == "W")
      throw ParseError("binary operator '" + word + "' without left operand", t.loc);
    return Formula::prop(word);
  }

  detail::Lexer& lex_;
};

}  // namespace

Formula parse_ltl(std::string_view text, SourceLoc origin) {
  detail::Lexer lex(text, origin);
  Formula f = LtlParser(lex).parse();
  lex.expect_end();
  return f;
}

// ---------------------------------------------------------------------------
// Structure

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> order;
  std::unordered_set<std::uint64_t> seen;
  // Iterative post-order.
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (seen.count(g.id())) continue;
    if (expanded) {
      seen.insert(g.id());
      order.push_back(g);
      continue;
    }
    stack.push_back({g, true});
    for (std::size_t i = g.arity(); i-- > 0;)
      if (!seen.count(g.child(i).id())) stack.push_back({g.child(i), false});
  }
  return order;
}

std::set<std::string> propositions(const Formula& f) {
  std::set<std::string> out;
  for (const auto& g : subformulas(f))
    if (g.op() == Formula::Op::prop) out.insert(g.name());
  return out;
}

std::size_t formula_size(const Formula& f) { return subformulas(f).size(); }

// ---------------------------------------------------------------------------
// Normalization

namespace {

Formula nnf(const Formula& f, bool negated,
            std::map<std::pair<std::uint64_t, bool>, Formula>& memo) {
  using Op = Formula::Op;
  auto key = std::make_pair(f.id(), negated);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  auto pos = [&](const Formula& g) { return nnf(g, false, memo); };
  auto neg = [&](const Formula& g) { return nnf(g, true, memo); };
  Formula r;
  switch (f.op()) {
    case Op::tt: r = negated ? Formula::ff() : Formula::tt(); break;
    case Op::ff: r = negated ? Formula::tt() : Formula::ff(); break;
    case Op::prop: r = negated ? Formula::neg(f) : f; break;
    case Op::lnot: r = nnf(f.child(0), !negated, memo); break;
    case Op::land:
      r = negated ? Formula::disj(neg(f.child(0)), neg(f.child(1)))
                  : Formula::conj(pos(f.child(0)), pos(f.child(1)));
      break;
    case Op::lor:
      r = negated ? Formula::conj(neg(f.child(0)), neg(f.child(1)))
                  : Formula::disj(pos(f.child(0)), pos(f.child(1)));
      break;
    case Op::implies:
      r = negated ? Formula::conj(pos(f.child(0)), neg(f.child(1)))
                  : Formula::disj(neg(f.child(0)), pos(f.child(1)));
      break;
    case Op::iff: {
      Formula a = pos(f.child(0)), na = neg(f.child(0));
      Formula b = pos(f.child(1)), nb = neg(f.child(1));
      r = negated ? Formula::disj(Formula::conj(a, nb), Formula::conj(na, b))
                  : Formula::disj(Formula::conj(a, b), Formula::conj(na, nb));
      break;
    }
    case Op::next:
      r = Formula::X(nnf(f.child(0), negated, memo));
      break;
    case Op::until:
      if (!negated) {
        r = Formula::U(pos(f.child(0)), pos(f.child(1)));
      } else {
        // !(a U b) == (!b) W (!a & !b)
        Formula na = neg(f.child(0)), nb = neg(f.child(1));
        r = Formula::disj(Formula::U(nb, Formula::conj(na, nb)), Formula::G(nb));
      }
      break;
    case Op::weak_until:
      if (!negated) {
        Formula a = pos(f.child(0)), b = pos(f.child(1));
        r = Formula::disj(Formula::U(a, b), Formula::G(a));
      } else {
        // !(a W b) == (!b) U (!a & !b)
        Formula na = neg(f.child(0)), nb = neg(f.child(1));
        r = Formula::U(nb, Formula::conj(na, nb));
      }
      break;
    case Op::globally:
      r = negated ? Formula::U(Formula::tt(), neg(f.child(0)))
                  : Formula::G(pos(f.child(0)));
      break;
    case Op::finally:
      r = negated ? Formula::G(neg(f.child(0)))
                  : Formula::U(Formula::tt(), pos(f.child(0)));
      break;
  }
  memo.emplace(key, r);
  return r;
}

bool no_globally(const Formula& f) {
  for (const auto& g : subformulas(f))
    if (g.op() == Formula::Op::globally) return false;
  return true;
}

bool alpha_nnf(const Formula& f) {
  using Op = Formula::Op;
  switch (f.op()) {
    case Op::tt: case Op::ff: case Op::prop: return true;
    case Op::lnot: return f.child(0).op() == Op::prop;
    case Op::land: case Op::lor: return alpha_nnf(f.child(0)) && alpha_nnf(f.child(1));
    default: return false;
  }
}

bool beta_nnf(const Formula& f) {
  using Op = Formula::Op;
  if (alpha_nnf(f)) return true;
  switch (f.op()) {
    case Op::next: return alpha_nnf(f.child(0));
    case Op::land: case Op::lor: return beta_nnf(f.child(0)) && beta_nnf(f.child(1));
    default: return false;
  }
}

bool gamma_nnf(const Formula& f) {
  using Op = Formula::Op;
  if (f.op() == Op::land) return gamma_nnf(f.child(0)) && gamma_nnf(f.child(1));
  if (f.op() != Op::globally) return false;
  Formula body = f.child(0);
  if (beta_nnf(body)) return true;
  // GF alpha normalizes to G (tt U alpha).
  return body.op() == Op::until && body.child(0).op() == Op::tt &&
         alpha_nnf(body.child(1));
}

}  // namespace

Formula normalize(const Formula& f) {
  std::map<std::pair<std::uint64_t, bool>, Formula> memo;
  return nnf(f, false, memo);
}

std::string_view fragment_name(Fragment fr) {
  switch (fr) {
    case Fragment::assumption_alpha: return "assumption_alpha";
    case Fragment::assumption_beta: return "assumption_beta";
    case Fragment::cosafety: return "cosafety";
    case Fragment::assumption_gamma: return "assumption_gamma";
    case Fragment::general: return "general";
  }
  return "general";
}

bool is_cosafety(const Formula& f) { return no_globally(normalize(f)); }
bool is_alpha(const Formula& f) { return alpha_nnf(normalize(f)); }
bool is_beta(const Formula& f) { return beta_nnf(normalize(f)); }
bool is_gamma(const Formula& f) { return gamma_nnf(normalize(f)); }

GammaParts split_gamma(const Formula& f) {
  using Op = Formula::Op;
  GammaParts out;
  std::vector<Formula> stack{normalize(f)};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.op() == Op::land) {
      stack.push_back(g.child(1));
      stack.push_back(g.child(0));
    } else if (g.op() == Op::tt) {
      continue;
    } else if (g.op() == Op::globally && beta_nnf(g.child(0))) {
      out.invariants.push_back(g.child(0));
    } else if (gamma_nnf(g)) {
      out.recurrences.push_back(g.child(0).child(1));
    } else {
      throw Error("assumption outside gamma fragment: " + to_string(g));
    }
  }
  return out;
}

Fragment classify(const Formula& f) {
  Formula n = normalize(f);
  if (alpha_nnf(n)) return Fragment::assumption_alpha;
  if (beta_nnf(n)) return Fragment::assumption_beta;
  if (no_globally(n)) return Fragment::cosafety;
  if (gamma_nnf(n)) return Fragment::assumption_gamma;
  return Fragment::general;
}

// ---------------------------------------------------------------------------
// Traces

Letter LassoTrace::at(std::size_t pos) const {
  if (pos < prefix.size()) return prefix[pos];
  return loop[(pos - prefix.size()) % loop.size()];
}

LassoTrace LassoTrace::suffix(std::size_t pos) const {
  if (pos < prefix.size())
    return {std::vector<Letter>(prefix.begin() + static_cast<std::ptrdiff_t>(pos), prefix.end()), loop};
  std::size_t shift = (pos - prefix.size()) % loop.size();
  LassoTrace out;
  out.loop.reserve(loop.size());
  for (std::size_t k = 0; k < loop.size(); ++k)
    out.loop.push_back(loop[(shift + k) % loop.size()]);
  return out;
}

std::vector<Letter> LassoTrace::unroll(std::size_t n) const {
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Letter prop_bit(const Formula& f, const PropTable& props) {
  auto idx = props.index_of(f.name());
  if (!idx) throw Error("unknown proposition '" + f.name() + "'");
  return bit(*idx);
}

}  // namespace

bool eval_finite(const Formula& f, const PropTable& props,
                 const std::vector<Letter>& trace, std::size_t i,
                 std::size_t j) {
  using Op = Formula::Op;
  if (i > j || j >= trace.size())
    throw Error("eval_finite: window out of range");
  const std::size_t n = j - i + 1;
  std::unordered_map<std::uint64_t, std::vector<char>> val;
  for (const auto& g : subformulas(f)) {
    std::vector<char> v(n, 0);
    auto kid = [&](std::size_t c) -> const std::vector<char>& {
      return val.at(g.child(c).id());
    };
    switch (g.op()) {
      case Op::tt: std::fill(v.begin(), v.end(), 1); break;
      case Op::ff: break;
      case Op::prop: {
        Letter b = prop_bit(g, props);
        for (std::size_t k = 0; k < n; ++k) v[k] = (trace[i + k] & b) != 0;
        break;
      }
      case Op::lnot:
        for (std::size_t k = 0; k < n; ++k) v[k] = !kid(0)[k];
        break;
      case Op::land:
        for (std::size_t k = 0; k < n; ++k) v[k] = kid(0)[k] && kid(1)[k];
        break;
      case Op::lor:
        for (std::size_t k = 0; k < n; ++k) v[k] = kid(0)[k] || kid(1)[k];
        break;
      case Op::implies:
        for (std::size_t k = 0; k < n; ++k) v[k] = !kid(0)[k] || kid(1)[k];
        break;
      case Op::iff:
        for (std::size_t k = 0; k < n; ++k) v[k] = (kid(0)[k] != 0) == (kid(1)[k] != 0);
        break;
      case Op::next:
        for (std::size_t k = 0; k + 1 < n; ++k) v[k] = kid(0)[k + 1];
        break;
      case Op::until:
      case Op::weak_until:  // (a U b) | G a, and G fails on a finite window
        for (std::size_t k = n; k-- > 0;)
          v[k] = kid(1)[k] || (kid(0)[k] && k + 1 < n && v[k + 1]);
        break;
      case Op::finally:
        for (std::size_t k = n; k-- > 0;) v[k] = kid(0)[k] || (k + 1 < n && v[k + 1]);
        break;
      case Op::globally:
        break;
    }
    val.emplace(g.id(), std::move(v));
  }
  return val.at(f.id())[0] != 0;
}

bool eval_lasso(const Formula& f, const PropTable& props, const LassoTrace& t) {
  using Op = Formula::Op;
  if (t.loop.empty()) throw Error("lasso loop must be non-empty");
  const std::size_t n = t.size();
  auto succ = [&](std::size_t p) { return p + 1 < n ? p + 1 : t.period_start(); };
  std::unordered_map<std::uint64_t, std::vector<char>> val;
  for (const auto& g : subformulas(f)) {
    std::vector<char> v(n, 0);
    auto kid = [&](std::size_t c) -> const std::vector<char>& {
      return val.at(g.child(c).id());
    };
    // Fixpoint iteration: `step(p, cur)` recomputes one position.
    auto fix = [&](bool init, auto&& step) {
      std::fill(v.begin(), v.end(), init ? 1 : 0);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t p = n; p-- > 0;) {
          char nv = step(p) ? 1 : 0;
          if (nv != v[p]) {
            v[p] = nv;
            changed = true;
          }
        }
      }
    };
    switch (g.op()) {
      case Op::tt: std::fill(v.begin(), v.end(), 1); break;
      case Op::ff: break;
      case Op::prop: {
        Letter b = prop_bit(g, props);
        for (std::size_t p = 0; p < n; ++p) v[p] = (t.at(p) & b) != 0;
        break;
      }
      case Op::lnot:
        for (std::size_t p = 0; p < n; ++p) v[p] = !kid(0)[p];
        break;
      case Op::land:
        for (std::size_t p = 0; p < n; ++p) v[p] = kid(0)[p] && kid(1)[p];
        break;
      case Op::lor:
        for (std::size_t p = 0; p < n; ++p) v[p] = kid(0)[p] || kid(1)[p];
        break;
      case Op::implies:
        for (std::size_t p = 0; p < n; ++p) v[p] = !kid(0)[p] || kid(1)[p];
        break;
      case Op::iff:
        for (std::size_t p = 0; p < n; ++p) v[p] = (kid(0)[p] != 0) == (kid(1)[p] != 0);
        break;
      case Op::next:
        for (std::size_t p = 0; p < n; ++p) v[p] = kid(0)[succ(p)];
        break;
      case Op::until: {
        const auto& a = kid(0);
        const auto& b = kid(1);
        fix(false, [&](std::size_t p) { return b[p] || (a[p] && v[succ(p)]); });
        break;
      }
      case Op::weak_until: {
        const auto& a = kid(0);
        const auto& b = kid(1);
        fix(true, [&](std::size_t p) { return b[p] || (a[p] && v[succ(p)]); });
        break;
      }
      case Op::finally: {
        const auto& a = kid(0);
        fix(false, [&](std::size_t p) { return a[p] || v[succ(p)]; });
        break;
      }
      case Op::globally: {
        const auto& a = kid(0);
        fix(true, [&](std::size_t p) { return a[p] && v[succ(p)]; });
        break;
      }
    }
    val.emplace(g.id(), std::move(v));
  }
  return val.at(f.id())[0] != 0;
}

bool tight_sat(const Formula& f, const PropTable& props,
               const std::vector<Letter>& trace) {
  if (trace.empty()) return false;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k)
    if (eval_finite(f, props, trace, 0, k)) return false;
  return eval_finite(f, props, trace, 0, trace.size() - 1);
}

}  // namespace mtsyn
