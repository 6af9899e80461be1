#ifndef MTSYN_AUTOMATA_HPP
#define MTSYN_AUTOMATA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mtsyn/ltl.hpp"

namespace mtsyn {

/// Letters of the automata below range over 2^props, bit k = props[k].
/// Projection maps a letter of a wider PropTable onto such a local letter.
struct Projection {
  std::vector<std::size_t> source_bits;  // local bit k <- source bit

  Letter apply(Letter full) const {
    Letter out = 0;
    for (std::size_t k = 0; k < source_bits.size(); ++k)
      if (full & bit(source_bits[k])) out |= bit(k);
    return out;
  }
};

Projection make_projection(const std::vector<std::string>& local,
                           const PropTable& table);

/// Conjunction of automaton states; sorted, duplicate-free.
using StateSet = std::vector<std::uint32_t>;
/// Positive boolean combination in disjunctive normal form, kept as an
/// antichain (no cube contains another). {} is false, {{}} is true.
using Dnf = std::vector<StateSet>;

/// Alternating weak automaton of a co-safety formula. States are the
/// subformulas of its negation normal form; a run accepts a finite word
/// when every branch has discharged its obligations by the last letter.
struct Aww {
  std::vector<std::string> props;
  std::vector<Formula> states;
  std::uint32_t initial = 0;

  Dnf delta(std::uint32_t state, Letter letter) const;
  std::size_t num_letters() const { return std::size_t{1} << props.size(); }
};

/// Throws Error if `body` is not co-safety.
Aww build_aww(const Formula& body);

/// Nondeterministic automaton whose states are sets of AWW states; the
/// empty set is the only accepting state.
struct Nfw {
  std::vector<std::string> props;
  std::vector<StateSet> states;
  std::uint32_t initial = 0;
  std::uint32_t accepting = 0;
  bool has_accepting = false;
  /// successors[state][letter]
  std::vector<std::vector<std::vector<std::uint32_t>>> successors;

  std::size_t num_letters() const { return std::size_t{1} << props.size(); }
};

Nfw aww_to_nfw(const Aww& a);

/// Complete deterministic automaton. All accepting subsets are merged into
/// one absorbing accepting state (every extension of an accepted word is
/// accepted, since the empty obligation set loops on every letter).
struct Dfw {
  std::vector<std::string> props;
  std::vector<std::vector<std::uint32_t>> subsets;  // NFW states per state
  std::uint32_t initial = 0;
  std::vector<char> accepting;
  std::vector<std::uint32_t> table;  // [state * num_letters() + letter]

  std::size_t num_letters() const { return std::size_t{1} << props.size(); }
  std::size_t size() const { return accepting.size(); }
  std::uint32_t step(std::uint32_t s, Letter local) const {
    return table[s * num_letters() + local];
  }
  bool is_accepting(std::uint32_t s) const { return accepting[s] != 0; }
  /// Acceptance of a word of local letters.
  bool accepts(const std::vector<Letter>& word) const;
};

Dfw nfw_to_dfw(const Nfw& n);

/// build_aww -> aww_to_nfw -> nfw_to_dfw.
Dfw build_dfw(const Formula& body);

}  // namespace mtsyn

#endif  // MTSYN_AUTOMATA_HPP
