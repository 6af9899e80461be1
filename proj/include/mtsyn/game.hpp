#ifndef MTSYN_GAME_HPP
#define MTSYN_GAME_HPP

#include <optional>

#include "mtsyn/automata.hpp"
#include "mtsyn/mealy.hpp"

namespace mtsyn {

/// Raised for assumptions the built-in engine cannot handle (recurrence).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Splits an assumption into the conjunction of its invariant bodies
/// (beta formulas). Throws UnsupportedError on a G F alpha conjunct and
/// Error on anything outside the gamma fragment.
std::vector<Formula> invariant_terms(const Formula& assumption);

/// Reachability game for `assumption -> body` where `d` is the body's DFW.
/// The environment picks inputs, the system answers with outputs; the
/// system wins on reaching an accepting DFW state or when an input makes an
/// invariant of the assumption fail whatever the outputs. Returns a tight
/// realizer (accepting exactly at the first DFW acceptance), or nothing
/// when the environment can avoid both forever.
///
/// Among optimal outputs (fewest steps to win) the numerically least
/// output letter is chosen, so results are reproducible.
std::optional<MealyMachine> solve_reachability(const Dfw& d,
                                               const Formula& assumption,
                                               const PropTable& props);

}  // namespace mtsyn

#endif  // MTSYN_GAME_HPP
