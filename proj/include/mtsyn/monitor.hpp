#ifndef MTSYN_MONITOR_HPP
#define MTSYN_MONITOR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtsyn/expr.hpp"

namespace mtsyn {

using StateId = std::size_t;

struct MonitorTransition {
  StateId source = 0;
  Expr guard;
  Action action;
  StateId target = 0;
  SourceLoc loc;  // where it was declared, {0,0} when built in code

  bool operator==(const MonitorTransition& o) const {
    return source == o.source && guard == o.guard && action == o.action &&
           target == o.target;
  }
};

/// Flagging monitor over events 2^inputs. Transitions are ordered: when
/// several guards hold, the first declared one fires.
struct Monitor {
  std::vector<std::string> inputs;
  std::vector<VarDecl> vars;
  std::vector<std::string> states;
  StateId initial = 0;
  std::vector<StateId> flagging;
  StateId sink = 0;
  std::vector<MonitorTransition> transitions;

  bool is_flagging(StateId s) const;
  std::optional<StateId> state_index(const std::string& name) const;
  ExprNames names() const { return {var_names(), inputs}; }
  std::vector<std::string> var_names() const;

  bool operator==(const Monitor&) const = default;
};

struct Configuration {
  StateId state = 0;
  Valuation val;

  bool operator==(const Configuration&) const = default;
};

Configuration initial_configuration(const Monitor& m);

struct Diagnostic {
  std::string message;
  SourceLoc loc;
};

/// Structural well-formedness. Empty iff every invariant holds.
std::vector<Diagnostic> validate(const Monitor& m);

/// Heuristic lints: overlapping guards found by random sampling, and
/// divisions by zero reachable from the initial valuation on the first step.
std::vector<Diagnostic> lint(const Monitor& m, std::uint64_t seed = 1,
                             std::size_t samples = 2000);

/// One step of the flagging-monitor semantics. Throws EvalError (with the
/// offending transition's location) when a guard or action fails.
Configuration step(const Monitor& m, const Configuration& c, Letter event);

/// Index of the transition that fires from `c` on `event`, if any.
std::optional<std::size_t> enabled_transition(const Monitor& m,
                                              const Configuration& c,
                                              Letter event);

struct FlagResult {
  enum class Tag { flagged, pending, dead };
  Tag tag = Tag::pending;
  std::size_t index = 0;      // flagged: position of the flagging event
  Configuration final_config;  // pending/dead: configuration after the trace

  static FlagResult flagged(std::size_t j) { return {Tag::flagged, j, {}}; }
};

FlagResult run(const Monitor& m, const std::vector<Letter>& trace);

/// The monitor that flags on the first event, whatever it is.
Monitor star_monitor(std::vector<std::string> inputs);

/// True when no flagging state is reachable in the transition graph (guards
/// that are the literal `false` are ignored). Sufficient, not necessary.
bool cannot_flag(const Monitor& m);

}  // namespace mtsyn

#endif  // MTSYN_MONITOR_HPP
