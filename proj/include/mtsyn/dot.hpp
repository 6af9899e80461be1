#ifndef MTSYN_DOT_HPP
#define MTSYN_DOT_HPP

#include <string>

#include "mtsyn/compose.hpp"
#include "mtsyn/mealy.hpp"
#include "mtsyn/monitor.hpp"

namespace mtsyn {

std::string monitor_dot(const Monitor& m);

/// Edge labels read "guard / action / outputs"; rule-4 edges are dashed.
std::string controller_dot(const SymbolicController& sc);

std::string mealy_dot(const MealyMachine& m);

}  // namespace mtsyn

#endif  // MTSYN_DOT_HPP
