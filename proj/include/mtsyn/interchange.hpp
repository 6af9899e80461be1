#ifndef MTSYN_INTERCHANGE_HPP
#define MTSYN_INTERCHANGE_HPP

#include <string>
#include <string_view>

#include "mtsyn/mealy.hpp"

namespace mtsyn {

/// Reads a controller-interchange JSON document. Input patterns are
/// strings over {0,1,-} in the document's input order; inputs are matched
/// to `props` by name, so the document may list them in any order, and
/// outputs must be declared in `props`. The result is checked for
/// completeness and determinism.
MealyMachine import_controller(std::string_view json_text, const PropTable& props);

/// Same, taking the proposition partition from the document itself.
MealyMachine import_controller(std::string_view json_text);

/// Deterministic JSON rendering (two-space indent, trailing newline).
std::string export_controller(const MealyMachine& m);

}  // namespace mtsyn

#endif  // MTSYN_INTERCHANGE_HPP
