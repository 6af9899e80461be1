#include "mtsyn/monitor.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace mtsyn {

bool Monitor::is_flagging(StateId s) const {
  return std::find(flagging.begin(), flagging.end(), s) != flagging.end();
}

std::optional<StateId> Monitor::state_index(const std::string& name) const {
  for (StateId i = 0; i < states.size(); ++i)
    if (states[i] == name) return i;
  return std::nullopt;
}

std::vector<std::string> Monitor::var_names() const {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back(v.name);
  return out;
}

Configuration initial_configuration(const Monitor& m) {
  return {m.initial, initial_valuation(m.vars)};
}

std::vector<Diagnostic> validate(const Monitor& m) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string msg, SourceLoc loc = {}) {
    out.push_back({std::move(msg), loc});
  };
  const std::size_t n = m.states.size();
  std::set<std::string> names;
  for (const auto& s : m.states)
    if (!names.insert(s).second) report("duplicate state '" + s + "'");
  std::set<std::string> var_names;
  for (const auto& v : m.vars) {
    if (!var_names.insert(v.name).second)
      report("duplicate variable '" + v.name + "'");
    if (v.kind == Kind::boolean && v.initial != 0 && v.initial != 1)
      report("initial value of '" + v.name + "' does not match kind bool");
  }
  if (m.inputs.size() > max_propositions)
    report("too many input propositions");
  if (m.initial >= n) report("initial state is not declared");
  if (m.sink >= n) report("sink state is not declared");
  for (StateId f : m.flagging) {
    if (f >= n) {
      report("flagging state is not declared");
      continue;
    }
    if (f == m.initial)
      report("initial state cannot flag ('" + m.states[f] + "')");
    if (f == m.sink) report("sink state cannot flag ('" + m.states[f] + "')");
  }
  for (const auto& t : m.transitions) {
    if (t.source >= n || t.target >= n) {
      report("transition references an undeclared state", t.loc);
      continue;
    }
    if (t.source == m.sink)
      report("sink has outgoing transition (from '" + m.states[t.source] + "')",
             t.loc);
    try {
      if (check_kind(t.guard, m.vars, m.inputs.size()) != Kind::boolean)
        report("guard is not boolean", t.loc);
    } catch (const Error& e) {
      report(std::string("guard: ") + e.what(), t.loc);
    }
    try {
      check_action(t.action, m.vars, m.inputs.size());
    } catch (const Error& e) {
      report(std::string("action: ") + e.what(), t.loc);
    }
  }
  return out;
}

std::optional<std::size_t> enabled_transition(const Monitor& m,
                                              const Configuration& c,
                                              Letter event) {
  for (std::size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    if (t.source != c.state) continue;
    bool holds;
    try {
      holds = t.guard.eval(event, c.val).as_bool();
    } catch (const EvalError& e) {
      throw EvalError("transition at " + std::to_string(t.loc.line) + ":" +
                      std::to_string(t.loc.column) + " (" +
                      m.states[t.source] + " -> " + m.states[t.target] +
                      "): guard: " + e.what());
    }
    if (holds) return i;
  }
  return std::nullopt;
}

Configuration step(const Monitor& m, const Configuration& c, Letter event) {
  if (c.state == m.sink) return c;                          // rule 3
  if (m.is_flagging(c.state)) return {m.sink, c.val};       // rule 4
  auto fired = enabled_transition(m, c, event);
  if (!fired) return c;                                     // rule 2
  const auto& t = m.transitions[*fired];                    // rule 1
  try {
    return {t.target, apply_action(t.action, event, c.val)};
  } catch (const EvalError& e) {
    throw EvalError("transition at " + std::to_string(t.loc.line) + ":" +
                    std::to_string(t.loc.column) + " (" + m.states[t.source] +
                    " -> " + m.states[t.target] + "): action: " + e.what());
  }
}

FlagResult run(const Monitor& m, const std::vector<Letter>& trace) {
  Configuration c = initial_configuration(m);
  for (std::size_t j = 0; j < trace.size(); ++j) {
    c = step(m, c, trace[j]);
    if (m.is_flagging(c.state)) return FlagResult::flagged(j);
    if (c.state == m.sink) {
      // Nothing leaves the sink; the remaining events cannot matter.
      return {FlagResult::Tag::dead, 0, c};
    }
  }
  return {FlagResult::Tag::pending, 0, c};
}

Monitor star_monitor(std::vector<std::string> inputs) {
  Monitor m;
  m.inputs = std::move(inputs);
  m.states = {"q0", "qF", "sink"};
  m.initial = 0;
  m.flagging = {1};
  m.sink = 2;
  m.transitions.push_back({0, Expr::boolean(true), {}, 1, {}});
  return m;
}

bool cannot_flag(const Monitor& m) {
  std::vector<bool> seen(m.states.size(), false);
  std::vector<StateId> todo{m.initial};
  if (m.initial >= m.states.size()) return true;
  seen[m.initial] = true;
  while (!todo.empty()) {
    StateId s = todo.back();
    todo.pop_back();
    if (m.is_flagging(s)) return false;
    if (s == m.sink) continue;
    for (const auto& t : m.transitions) {
      if (t.source != s || t.guard.is_false_literal()) continue;
      if (t.target < seen.size() && !seen[t.target]) {
        seen[t.target] = true;
        todo.push_back(t.target);
      }
    }
  }
  return true;
}

std::vector<Diagnostic> lint(const Monitor& m, std::uint64_t seed,
                             std::size_t samples) {
  std::vector<Diagnostic> out;
  if (!validate(m).empty()) return out;
  std::mt19937_64 rng(seed);
  const Letter in_mask = low_mask(m.inputs.size());

  // Overlapping guards: sample (state, event, valuation) triples.
  std::set<std::pair<std::size_t, std::size_t>> reported;
  for (std::size_t k = 0; k < samples && !m.transitions.empty(); ++k) {
    StateId s = m.transitions[rng() % m.transitions.size()].source;
    Letter ev = rng() & in_mask;
    Valuation val = initial_valuation(m.vars);
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (m.vars[i].parameter) continue;
      if (val[i].kind == Kind::boolean) {
        val[i].raw = static_cast<std::int64_t>(rng() & 1);
      } else if (rng() % 4 != 0) {
        val[i].raw = static_cast<std::int64_t>(rng() % 41) - 20;
      }
    }
    std::vector<std::size_t> enabled;
    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
      const auto& t = m.transitions[i];
      if (t.source != s) continue;
      try {
        if (t.guard.eval(ev, val).as_bool()) enabled.push_back(i);
      } catch (const EvalError&) {
      }
    }
    if (enabled.size() >= 2 && reported.insert({enabled[0], enabled[1]}).second) {
      const auto& a = m.transitions[enabled[0]];
      const auto& b = m.transitions[enabled[1]];
      out.push_back({"guards of transitions at line " +
                         std::to_string(a.loc.line) + " and line " +
                         std::to_string(b.loc.line) +
                         " can hold together; the first declared one fires",
                     b.loc});
    }
  }

  for (const auto& t : m.transitions)
    if (m.is_flagging(t.source))
      out.push_back({"transition out of flagging state '" + m.states[t.source] +
                         "' never fires (flagging states move to the sink)",
                     t.loc});

  // Division by zero on the very first step.
  const Valuation init = initial_valuation(m.vars);
  const std::size_t events =
      m.inputs.size() <= 10 ? (std::size_t{1} << m.inputs.size()) : 1024;
  for (const auto& t : m.transitions) {
    if (t.source != m.initial) continue;
    for (std::size_t e = 0; e < events; ++e) {
      Letter ev = m.inputs.size() <= 10 ? static_cast<Letter>(e) : (rng() & in_mask);
      try {
        if (t.guard.eval(ev, init).as_bool()) apply_action(t.action, ev, init);
      } catch (const EvalError& err) {
        out.push_back({std::string("initial valuation: ") + err.what(), t.loc});
        break;
      }
    }
  }
  return out;
}

}  // namespace mtsyn
