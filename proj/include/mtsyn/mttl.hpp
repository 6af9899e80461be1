#ifndef MTSYN_MTTL_HPP
#define MTSYN_MTTL_HPP

#include <string>
#include <utility>
#include <vector>

#include "mtsyn/ltl.hpp"
#include "mtsyn/monitor.hpp"

namespace mtsyn {

enum class TriggerKind {
  once,    // D : phi
  repeat,  // (D ; phi)*
};

std::string_view trigger_name(TriggerKind k);

/// assumption -> trigger, over inputs (read by the monitor) and outputs.
struct MttlSpec {
  PropTable props;
  Formula assumption = Formula::tt();
  TriggerKind trigger = TriggerKind::once;
  Monitor monitor;
  Formula body = Formula::tt();

  bool operator==(const MttlSpec&) const = default;
};

/// Everything that makes a spec ill-formed: monitor structure, alphabet
/// mismatches, a repeating body outside co-safety, an assumption outside
/// the supported invariant/recurrence fragment.
std::vector<Diagnostic> check_spec(const MttlSpec& spec);

/// assumption -> body
Formula t_of(const MttlSpec& spec);

struct Verdict {
  enum class Tag { sat, unsat, unknown };
  Tag tag = Tag::sat;
  std::string reason;
  std::vector<std::size_t> flags;                              // flag positions
  std::vector<std::pair<std::size_t, std::size_t>> windows;    // tight witnesses

  static std::string_view tag_name(Tag t);
};

/// D : body on an infinite trace. The body is evaluated from the flagging
/// position itself (monitor and body share that event).
Verdict oracle_simple(const Monitor& m, const Formula& body,
                      const PropTable& props, const LassoTrace& t,
                      std::size_t bound);

/// (D ; body)* on an infinite trace. After each tight witness the monitor
/// restarts from its initial configuration at the next position.
Verdict oracle_repeat(const Monitor& m, const Formula& body,
                      const PropTable& props, const LassoTrace& t,
                      std::size_t bound);

Verdict oracle(const MttlSpec& spec, const LassoTrace& t, std::size_t bound);

}  // namespace mtsyn

#endif  // MTSYN_MTTL_HPP
