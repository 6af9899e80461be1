#ifndef MTSYN_MEALY_HPP
#define MTSYN_MEALY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mtsyn/automata.hpp"
#include "mtsyn/props.hpp"

namespace mtsyn {

/// Set of input letters fixing the `care` bits to `value`.
struct InputCube {
  Letter care = 0;
  Letter value = 0;

  bool matches(Letter input) const { return (input & care) == value; }
  bool intersects(const InputCube& o) const {
    return ((value ^ o.value) & care & o.care) == 0;
  }
  bool operator==(const InputCube&) const = default;
};

struct MealyEdge {
  InputCube input;
  Letter output = 0;  // PropTable output bits
  std::uint32_t target = 0;

  bool operator==(const MealyEdge&) const = default;
};

/// Complete deterministic Mealy machine over props.inputs() / outputs().
/// Each state's edges partition the input letters. Accepting states mark
/// the ends of tight witnesses; plain realizers have none.
struct MealyMachine {
  PropTable props;
  std::vector<std::string> states;
  std::uint32_t initial = 0;
  std::vector<char> accepting;
  std::vector<std::vector<MealyEdge>> edges;

  struct Move {
    Letter output = 0;
    std::uint32_t target = 0;
  };

  /// Throws Error if no edge matches (an incomplete machine).
  Move step(std::uint32_t state, Letter input) const;
  bool has_accepting() const;
  bool is_accepting(std::uint32_t s) const { return accepting.at(s) != 0; }
  std::size_t num_transitions() const;

  bool operator==(const MealyMachine&) const = default;
};

/// Throws Error on nondeterminism (overlapping cubes), incompleteness
/// (uncovered inputs), bad targets, or bits outside the alphabet.
void check_machine(const MealyMachine& m);

/// Merges edges with equal output and target into fewer cubes.
void compress(MealyMachine& m);

/// Removes accepting marks (plain realizer for a simple trigger).
MealyMachine without_accepting(MealyMachine m);

/// Product with the body's DFW. A product state is accepting exactly when
/// its run enters an accepting DFW state for the first time; afterwards the
/// DFW component is retired and nothing is accepted again.
MealyMachine mark_tight(const MealyMachine& c, const Dfw& d);

}  // namespace mtsyn

#endif  // MTSYN_MEALY_HPP
