// Random formulas, lassos and monitors for the property suites.
#ifndef MTSYN_TESTS_GENERATORS_HPP
#define MTSYN_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "mtsyn/ltl.hpp"
#include "mtsyn/monitor.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline std::size_t below(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool coin(Rng& rng) { return below(rng, 2) == 0; }

/// Formula of depth <= `depth` over `props`. With `cosafety` set, no G, W or
/// negation above a temporal operator is produced.
inline mtsyn::Formula formula(Rng& rng, const std::vector<std::string>& props, int depth,
                              bool cosafety = false) {
  using mtsyn::Formula;
  if (depth <= 0 || below(rng, 4) == 0) {
    switch (below(rng, 8)) {
      case 0: return Formula::tt();
      case 1: return Formula::ff();
      case 2:
      case 3: return Formula::neg(Formula::prop(props[below(rng, props.size())]));
      default: return Formula::prop(props[below(rng, props.size())]);
    }
  }
  auto sub = [&] { return formula(rng, props, depth - 1, cosafety); };
  const std::size_t choices = cosafety ? 5 : 9;
  switch (below(rng, choices)) {
    case 0: return Formula::conj(sub(), sub());
    case 1: return Formula::disj(sub(), sub());
    case 2: return Formula::X(sub());
    case 3: return Formula::U(sub(), sub());
    case 4: return Formula::F(sub());
    case 5: return Formula::G(sub());
    case 6: return Formula::neg(sub());
    case 7: return Formula::W(sub(), sub());
    default: return Formula::implies(sub(), sub());
  }
}

inline std::vector<mtsyn::Letter> letters(Rng& rng, std::size_t n, std::size_t nprops) {
  std::vector<mtsyn::Letter> out(n);
  for (auto& l : out) l = rng() & mtsyn::low_mask(nprops);
  return out;
}

inline mtsyn::LassoTrace lasso(Rng& rng, std::size_t nprops, std::size_t max_prefix,
                               std::size_t max_loop) {
  mtsyn::LassoTrace t;
  t.prefix = letters(rng, below(rng, max_prefix + 1), nprops);
  t.loop = letters(rng, 1 + below(rng, max_loop), nprops);
  return t;
}

/// Guard from a small grammar: membership literals, comparisons of a
/// variable against a constant, and their conjunctions/disjunctions.
inline mtsyn::Expr guard(Rng& rng, std::size_t ninputs, std::size_t nvars, int depth = 2) {
  using mtsyn::Expr;
  if (depth == 0 || below(rng, 3) == 0) {
    std::size_t pick = below(rng, nvars ? 3 : 2);
    if (pick == 0) return Expr::boolean(below(rng, 5) != 0);
    if (pick == 1) {
      Expr m = Expr::member(below(rng, ninputs));
      return coin(rng) ? m : Expr::unary(Expr::Op::lnot, m);
    }
    static constexpr Expr::Op cmp[] = {Expr::Op::lt, Expr::Op::le, Expr::Op::eq,
                                       Expr::Op::ne, Expr::Op::ge, Expr::Op::gt};
    return Expr::binary(cmp[below(rng, 6)], Expr::var(below(rng, nvars)),
                        Expr::integer(static_cast<std::int64_t>(below(rng, 5))));
  }
  Expr a = guard(rng, ninputs, nvars, depth - 1), b = guard(rng, ninputs, nvars, depth - 1);
  return Expr::binary(coin(rng) ? Expr::Op::land : Expr::Op::lor, a, b);
}

/// Valid monitor with 2..4 states (one flagging, one sink) and up to two
/// integer variables.
inline mtsyn::Monitor monitor(Rng& rng, const std::vector<std::string>& inputs) {
  using namespace mtsyn;
  Monitor m;
  m.inputs = inputs;
  const std::size_t nvars = below(rng, 3);
  for (std::size_t v = 0; v < nvars; ++v)
    m.vars.push_back({"v" + std::to_string(v), Kind::integer,
                      static_cast<std::int64_t>(below(rng, 3)), false});
  const std::size_t nstates = 2 + below(rng, 3);  // including flag and sink
  for (std::size_t q = 0; q < nstates; ++q) m.states.push_back("q" + std::to_string(q));
  m.initial = 0;
  m.sink = nstates - 1;
  m.flagging = {nstates - 2 == 0 ? 1 : nstates - 2};
  if (m.flagging[0] == m.sink) {
    m.states.push_back("bot");
    m.sink = m.states.size() - 1;
  }
  const std::size_t ntrans = 1 + below(rng, 6);
  for (std::size_t k = 0; k < ntrans; ++k) {
    MonitorTransition t;
    do {
      t.source = below(rng, m.states.size());
    } while (t.source == m.sink);
    t.target = below(rng, m.states.size());
    t.guard = guard(rng, inputs.size(), nvars);
    for (std::size_t v = 0; v < nvars; ++v)
      if (coin(rng))
        t.action.push_back({v, Expr::binary(coin(rng) ? Expr::Op::add : Expr::Op::sub,
                                            Expr::var(v), Expr::integer(1))});
    m.transitions.push_back(std::move(t));
  }
  return m;
}

}  // namespace gen

#endif  // MTSYN_TESTS_GENERATORS_HPP
