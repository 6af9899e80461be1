#include "mtsyn/game.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace mtsyn {

std::vector<Formula> invariant_terms(const Formula& assumption) {
  GammaParts parts = split_gamma(assumption);
  if (!parts.recurrences.empty())
    throw UnsupportedError("recurrence assumption G F " + to_string(parts.recurrences.front()) +
                           " is not supported by the builtin backend; use an external backend");
  return parts.invariants;
}

namespace {

/// Evaluates a beta formula at a position given that letter and the next.
bool eval_beta(const Formula& f, const PropTable& props, Letter cur, Letter next) {
  using Op = Formula::Op;
  switch (f.op()) {
    case Op::tt: return true;
    case Op::ff: return false;
    case Op::prop: return (cur & bit(*props.index_of(f.name()))) != 0;
    case Op::lnot: return !eval_beta(f.child(0), props, cur, next);
    case Op::land:
      return eval_beta(f.child(0), props, cur, next) && eval_beta(f.child(1), props, cur, next);
    case Op::lor:
      return eval_beta(f.child(0), props, cur, next) || eval_beta(f.child(1), props, cur, next);
    case Op::next: return eval_beta(f.child(0), props, next, 0);
    default: throw Error("unexpected operator in invariant");
  }
}

bool mentions_next(const Formula& f) {
  for (const auto& g : subformulas(f))
    if (g.op() == Formula::Op::next) return true;
  return false;
}

/// Expands local bits over `bits` (table indices) into a table letter.
Letter expand(Letter local, const std::vector<std::size_t>& bits) {
  Letter out = 0;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (local & bit(k)) out |= bit(bits[k]);
  return out;
}

struct Position {
  std::uint32_t dfw = 0;
  Letter memory = 0;  // previous letter restricted to invariant props
  bool first = true;

  auto operator<=>(const Position&) const = default;
};

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::optional<MealyMachine> solve_reachability(const Dfw& d,
                                               const Formula& assumption,
                                               const PropTable& props) {
  const std::vector<Formula> invariants = invariant_terms(assumption);
  const Formula beta = Formula::conj(invariants);
  const bool has_beta = !invariants.empty();
  const bool lookahead = has_beta && mentions_next(beta);

  std::set<std::size_t> relevant;
  const Projection proj = make_projection(d.props, props);
  relevant.insert(proj.source_bits.begin(), proj.source_bits.end());
  Letter beta_mask = 0;
  for (const auto& p : propositions(beta)) {
    auto idx = props.index_of(p);
    if (!idx) throw Error("assumption mentions undeclared proposition '" + p + "'");
    relevant.insert(*idx);
    beta_mask |= bit(*idx);
  }
  std::vector<std::size_t> in_bits, out_bits;  // ascending table order
  for (std::size_t b : relevant) (b < props.num_inputs() ? in_bits : out_bits).push_back(b);
  if (in_bits.size() > 16 || out_bits.size() > 16)
    throw Error("builtin backend: too many relevant propositions");
  const std::size_t n_in = std::size_t{1} << in_bits.size();
  const std::size_t n_out = std::size_t{1} << out_bits.size();

  // Invariant check performed when the letter `cur` (this step) is known.
  auto beta_ok = [&](const Position& p, Letter cur) {
    if (!has_beta) return true;
    if (lookahead) return p.first || eval_beta(beta, props, p.memory, cur);
    return eval_beta(beta, props, cur, 0);
  };

  // Enumerate reachable positions.
  std::map<Position, std::uint32_t> index;
  std::vector<Position> positions;
  auto intern = [&](const Position& p) {
    auto [it, fresh] = index.emplace(p, static_cast<std::uint32_t>(positions.size()));
    if (fresh) positions.push_back(p);
    return it->second;
  };
  Position start{d.initial, 0, true};
  intern(start);

  // succ[pos][in][out]: kInf - 1 marks an immediate win, kInf an unusable
  // move (the system breaks the invariant itself), otherwise a position.
  constexpr std::uint32_t kWin = kInf - 1;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<std::vector<char>> breach;
  for (std::uint32_t p = 0; p < positions.size(); ++p) {
    const Position pos = positions[p];
    std::vector<std::uint32_t> row(n_in * n_out, kInf);
    std::vector<char> env_breach(n_in, 0);
    for (Letter i = 0; i < n_in; ++i) {
      Letter in = expand(i, in_bits);
      bool any_ok = false;
      for (Letter o = 0; o < n_out; ++o)
        if (beta_ok(pos, in | expand(o, out_bits))) any_ok = true;
      if (!any_ok) {
        env_breach[i] = 1;
        continue;
      }
      for (Letter o = 0; o < n_out; ++o) {
        Letter letter = in | expand(o, out_bits);
        std::uint32_t nd = d.step(pos.dfw, proj.apply(letter));
        if (d.is_accepting(nd)) {
          row[i * n_out + o] = kWin;
        } else {
          row[i * n_out + o] = intern(Position{nd, letter & beta_mask, false});
        }
      }
    }
    succ.push_back(std::move(row));
    breach.push_back(std::move(env_breach));
  }

  // Distance-to-win by value iteration on min (system) / max (environment).
  std::vector<std::uint32_t> rank(positions.size(), kInf);
  auto move_value = [&](std::uint32_t s) -> std::uint32_t {
    if (s == kWin) return 0;
    if (s == kInf) return kInf;
    return rank[s];
  };
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint32_t> next = rank;
    for (std::uint32_t p = 0; p < positions.size(); ++p) {
      std::uint32_t worst = 0;
      for (Letter i = 0; i < n_in && worst != kInf; ++i) {
        if (breach[p][i]) continue;
        std::uint32_t best = kInf;
        for (Letter o = 0; o < n_out; ++o) best = std::min(best, move_value(succ[p][i * n_out + o]));
        worst = std::max(worst, best);
      }
      std::uint32_t r = worst == kInf ? kInf : worst + 1;
      if (r < next[p]) {
        next[p] = r;
        changed = true;
      }
    }
    rank = std::move(next);
  }
  if (rank[0] == kInf) return std::nullopt;

  // Strategy extraction over positions reachable under the strategy.
  MealyMachine m;
  m.props = props;
  std::map<std::uint32_t, std::uint32_t> state_of;
  std::vector<std::uint32_t> todo;
  auto state_for = [&](std::uint32_t p) {
    auto [it, fresh] = state_of.emplace(p, static_cast<std::uint32_t>(m.states.size()));
    if (fresh) {
      m.states.push_back("s" + std::to_string(m.states.size()));
      m.accepting.push_back(0);
      m.edges.emplace_back();
      todo.push_back(p);
    }
    return it->second;
  };
  m.initial = state_for(0);
  std::uint32_t accept_state = kInf, idle_state = kInf;
  auto special = [&](std::uint32_t& slot, const char* name, bool acc) {
    if (slot == kInf) {
      slot = static_cast<std::uint32_t>(m.states.size());
      m.states.push_back(name);
      m.accepting.push_back(acc ? 1 : 0);
      m.edges.emplace_back();
    }
    return slot;
  };

  Letter in_care = expand(low_mask(in_bits.size()), in_bits);
  for (std::size_t k = 0; k < todo.size(); ++k) {
    std::uint32_t p = todo[k];
    std::uint32_t self = state_of.at(p);
    std::vector<MealyEdge> row;
    for (Letter i = 0; i < n_in; ++i) {
      InputCube cube{in_care, expand(i, in_bits)};
      if (breach[p][i]) {
        row.push_back({cube, 0, special(idle_state, "idle", false)});
        continue;
      }
      std::uint32_t best = kInf;
      Letter best_o = 0;
      for (Letter o = 0; o < n_out; ++o) {
        std::uint32_t v = move_value(succ[p][i * n_out + o]);
        if (v < best) {  // strict: keeps the least output among ties
          best = v;
          best_o = o;
        }
      }
      std::uint32_t s = succ[p][i * n_out + best_o];
      std::uint32_t target = s == kWin ? special(accept_state, "accept", true) : state_for(s);
      row.push_back({cube, expand(best_o, out_bits), target});
    }
    m.edges[self] = std::move(row);
  }
  if (accept_state != kInf) {
    special(idle_state, "idle", false);
    m.edges[accept_state] = {{InputCube{}, 0, idle_state}};
  }
  if (idle_state != kInf) m.edges[idle_state] = {{InputCube{}, 0, idle_state}};
  compress(m);
  return m;
}

}  // namespace mtsyn
