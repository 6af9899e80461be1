#ifndef MTSYN_COMPOSE_HPP
#define MTSYN_COMPOSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtsyn/mealy.hpp"
#include "mtsyn/monitor.hpp"
#include "mtsyn/mttl.hpp"

namespace mtsyn {

enum class ComposeMode { simple, repeating };

std::string_view mode_name(ComposeMode m);

struct Location {
  enum class Part : std::uint8_t { monitor, controller };
  Part part = Part::monitor;
  std::uint32_t index = 0;

  bool in_monitor() const { return part == Part::monitor; }
  auto operator<=>(const Location&) const = default;
};

/// Which construction rule produced a transition.
enum class Rule : std::uint8_t {
  monitor = 1,     // plain monitor move, silent
  fused = 2,       // flagging move merged with the controller's first move
  controller = 3,  // copied controller move
  reset = 4,       // accepting controller move sent back to the monitor
};

struct ControllerTransition {
  Location source;
  Expr guard;
  Action action;
  Letter outputs = 0;
  Location target;
  Rule rule = Rule::monitor;

  bool operator==(const ControllerTransition&) const = default;
};

struct SymbolicController {
  PropTable props;
  std::vector<VarDecl> vars;
  std::vector<std::string> monitor_states;
  std::vector<char> monitor_flagging;  // never entered; kept for names
  std::uint32_t monitor_sink = 0;
  std::vector<std::string> controller_states;
  ComposeMode mode = ComposeMode::simple;
  Location initial;
  std::vector<ControllerTransition> transitions;

  std::string location_name(const Location& l) const;
  ExprNames names() const;
  std::size_t num_locations() const {
    return monitor_states.size() + controller_states.size();
  }

  bool operator==(const SymbolicController&) const = default;
};

/// M |> C. Simple mode requires C without accepting states, repeating mode
/// requires some. Controller letters with the same output and successor
/// share one guard (a disjunction of input cubes).
SymbolicController compose(const Monitor& m, const MealyMachine& c, ComposeMode mode);

struct ControllerState {
  Location loc;
  Valuation val;

  bool operator==(const ControllerState&) const = default;
};

ControllerState initial_state(const SymbolicController& sc);

struct ControllerStep {
  ControllerState next;
  Letter outputs = 0;
  std::optional<std::size_t> transition;  // nullopt: stutter or sink
};

/// First enabled transition fires; monitor locations stutter silently and
/// the sink is absorbing. Throws EvalError on evaluation failure.
ControllerStep controller_step(const SymbolicController& sc, const ControllerState& s,
                               Letter event);

/// Structured-text (JSON) form read back by load_controller.
std::string serialize_controller(const SymbolicController& sc);
SymbolicController load_controller(std::string_view text);

struct VerifyOptions {
  std::size_t episodes = 1000;
  std::size_t horizon = 40;
  std::uint64_t seed = 1;
  std::size_t oracle_bound = 0;  // 0: derived from the lasso size
  std::size_t recurrence_period = 4;
};

struct VerifyReport {
  std::size_t episodes = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t unknown = 0;
  std::size_t vacuous = 0;  // sat because the assumption failed
  std::optional<LassoTrace> counterexample;
  std::optional<Verdict> counterexample_verdict;
  std::vector<LassoTrace> traces;  // only when keep_traces
};

/// Drives `sc` with random assumption-respecting inputs, closes each run into
/// a lasso the controller really produces, and asks the oracle.
VerifyReport verify_against_oracle(const MttlSpec& spec, const SymbolicController& sc,
                                   const VerifyOptions& opt, bool keep_traces = false);

}  // namespace mtsyn

#endif  // MTSYN_COMPOSE_HPP
