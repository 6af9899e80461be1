#include <doctest.h>

#include "generators.hpp"
#include "mtsyn/ltl.hpp"

using namespace mtsyn;

namespace {

const PropTable kProps({"a", "b"}, {"c"});
const std::vector<std::string> kNames = {"a", "b", "c"};

Formula P(const char* s) { return parse_ltl(s); }

// Direct recursive semantics on a finite window [i, j].
bool naive_finite(const Formula& f, const std::vector<Letter>& w, std::size_t i, std::size_t j) {
  using Op = Formula::Op;
  auto rec = [&](const Formula& g, std::size_t k) { return naive_finite(g, w, k, j); };
  switch (f.op()) {
    case Op::tt: return true;
    case Op::ff: return false;
    case Op::prop: return (w[i] >> *kProps.index_of(f.name())) & 1;
    case Op::lnot: return !rec(f.child(0), i);
    case Op::land: return rec(f.child(0), i) && rec(f.child(1), i);
    case Op::lor: return rec(f.child(0), i) || rec(f.child(1), i);
    case Op::implies: return !rec(f.child(0), i) || rec(f.child(1), i);
    case Op::iff: return rec(f.child(0), i) == rec(f.child(1), i);
    case Op::next: return i < j && rec(f.child(0), i + 1);
    case Op::finally:
      for (std::size_t k = i; k <= j; ++k)
        if (rec(f.child(0), k)) return true;
      return false;
    case Op::until:
      for (std::size_t k = i; k <= j; ++k) {
        if (rec(f.child(1), k)) return true;
        if (!rec(f.child(0), k)) return false;
      }
      return false;
    case Op::globally:
    case Op::weak_until:
      return false;  // unused by callers (co-safety only)
  }
  return false;
}

// Lasso semantics by bounded search: every position repeats within one
// period, so looking |prefix| + 2|loop| ahead is enough.
bool naive_lasso(const Formula& f, const LassoTrace& t, std::size_t i) {
  using Op = Formula::Op;
  auto norm = [&](std::size_t k) {
    return k < t.prefix.size() ? k : t.prefix.size() + (k - t.prefix.size()) % t.loop.size();
  };
  i = norm(i);
  const std::size_t horizon = t.size() + t.loop.size();
  auto rec = [&](const Formula& g, std::size_t k) { return naive_lasso(g, t, k); };
  switch (f.op()) {
    case Op::tt: return true;
    case Op::ff: return false;
    case Op::prop: return (t.at(i) >> *kProps.index_of(f.name())) & 1;
    case Op::lnot: return !rec(f.child(0), i);
    case Op::land: return rec(f.child(0), i) && rec(f.child(1), i);
    case Op::lor: return rec(f.child(0), i) || rec(f.child(1), i);
    case Op::implies: return !rec(f.child(0), i) || rec(f.child(1), i);
    case Op::iff: return rec(f.child(0), i) == rec(f.child(1), i);
    case Op::next: return rec(f.child(0), i + 1);
    case Op::finally:
      for (std::size_t k = i; k <= i + horizon; ++k)
        if (rec(f.child(0), k)) return true;
      return false;
    case Op::globally:
      for (std::size_t k = i; k <= i + horizon; ++k)
        if (!rec(f.child(0), k)) return false;
      return true;
    case Op::until:
    case Op::weak_until:
      for (std::size_t k = i; k <= i + horizon; ++k) {
        if (rec(f.child(1), k)) return true;
        if (!rec(f.child(0), k)) return false;
      }
      return f.op() == Op::weak_until;
  }
  return false;
}

}  // namespace

TEST_CASE("parser precedence and printing") {
  CHECK(P("a & b | c") == Formula::disj(Formula::conj(P("a"), P("b")), P("c")));
  CHECK(P("a -> b -> c") == Formula::implies(P("a"), Formula::implies(P("b"), P("c"))));
  CHECK(P("a U b U c") == Formula::U(P("a"), Formula::U(P("b"), P("c"))));
  CHECK(P("X a U b") == Formula::U(Formula::X(P("a")), P("b")));
  CHECK(P("!a && true || false") == Formula::disj(Formula::conj(Formula::neg(P("a")), Formula::tt()), Formula::ff()));
  CHECK_THROWS_AS(P("a &"), ParseError);
  CHECK_THROWS_AS(P("(a"), ParseError);
  gen::Rng rng(5);
  for (int k = 0; k < 300; ++k) {
    Formula f = gen::formula(rng, kNames, 4);
    CHECK(parse_ltl(to_string(f)) == f);
  }
}

TEST_CASE("hash-consing shares equal formulas") {
  CHECK(P("a U (b & X c)") == P("a U (b & X c)"));
  CHECK(P("a U (b & X c)").id() == Formula::U(P("a"), Formula::conj(P("b"), Formula::X(P("c")))).id());
}

TEST_CASE("normalize yields NNF and preserves meaning") {
  gen::Rng rng(9);
  for (int k = 0; k < 300; ++k) {
    Formula f = gen::formula(rng, kNames, 3);
    Formula n = normalize(f);
    for (const auto& g : subformulas(n)) {
      CHECK(g.op() != Formula::Op::implies);
      CHECK(g.op() != Formula::Op::iff);
      CHECK(g.op() != Formula::Op::weak_until);
      CHECK(g.op() != Formula::Op::finally);
      if (g.op() == Formula::Op::lnot) CHECK(g.child(0).op() == Formula::Op::prop);
    }
    LassoTrace t = gen::lasso(rng, 3, 4, 3);
    CHECK(eval_lasso(f, kProps, t) == eval_lasso(n, kProps, t));
  }
}

TEST_CASE("fragments") {
  CHECK(classify(P("a & !b")) == Fragment::assumption_alpha);
  CHECK(classify(P("a | X b")) == Fragment::assumption_beta);
  CHECK(classify(P("a U X b")) == Fragment::cosafety);
  CHECK(classify(P("G (a | X b) & G F c")) == Fragment::assumption_gamma);
  CHECK(classify(P("G F (a & X b)")) == Fragment::general);
  CHECK(classify(P("G a")) == Fragment::assumption_gamma);
  CHECK(is_gamma(P("G a")));
  CHECK_FALSE(is_cosafety(P("!(a U b)")));
  CHECK(is_cosafety(P("!(G a)")));
  CHECK_FALSE(is_beta(P("X X a")));
}

TEST_CASE("split_gamma") {
  auto parts = split_gamma(P("G (a | X b) & G F c & G F !a"));
  CHECK(parts.invariants.size() == 1);
  CHECK(parts.recurrences.size() == 2);
  CHECK(split_gamma(Formula::tt()).invariants.empty());
  CHECK_THROWS_AS(split_gamma(P("F a")), Error);
}

TEST_CASE("finite windows agree with the recursive definition") {
  gen::Rng rng(21);
  for (int k = 0; k < 300; ++k) {
    Formula f = normalize(gen::formula(rng, kNames, 3, true));
    auto w = gen::letters(rng, 1 + gen::below(rng, 6), 3);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i; j < w.size(); ++j)
        CHECK(eval_finite(f, kProps, w, i, j) == naive_finite(f, w, i, j));
  }
}

TEST_CASE("G is false and U needs its witness inside a window") {
  std::vector<Letter> w = {1, 1, 0};
  CHECK_FALSE(eval_finite(P("G a"), kProps, w, 0, 1));
  CHECK_FALSE(eval_finite(P("a U b"), kProps, w, 0, 2));
  CHECK(eval_finite(P("F !a"), kProps, w, 0, 2));
  CHECK_FALSE(eval_finite(P("X a"), kProps, w, 1, 1));
}

TEST_CASE("lasso evaluation agrees with bounded search") {
  gen::Rng rng(33);
  for (int k = 0; k < 500; ++k) {
    Formula f = gen::formula(rng, kNames, 3);
    LassoTrace t = gen::lasso(rng, 3, 5, 4);
    CHECK(eval_lasso(f, kProps, t) == naive_lasso(f, t, 0));
  }
}

TEST_CASE("lasso helpers") {
  LassoTrace t{{1, 2}, {4, 5}};
  CHECK(t.at(5) == 5);
  CHECK(t.at(6) == 4);
  CHECK(t.unroll(5) == std::vector<Letter>{1, 2, 4, 5, 4});
  LassoTrace s = t.suffix(3);
  CHECK(s.at(0) == 5);
  CHECK(s.at(1) == 4);
}

TEST_CASE("tight satisfaction") {
  CHECK(tight_sat(P("c & X tt"), kProps, {4, 0}));
  CHECK_FALSE(tight_sat(P("c & X tt"), kProps, {4}));
  CHECK_FALSE(tight_sat(P("c & X tt"), kProps, {4, 0, 0}));
  CHECK(tight_sat(P("F a"), kProps, {0, 0, 1}));
  CHECK_FALSE(tight_sat(P("F a"), kProps, {1, 1}));
}

TEST_CASE("unknown propositions are rejected") {
  CHECK_THROWS_AS(eval_lasso(P("zz"), kProps, LassoTrace{{}, {0}}), Error);
}
