#ifndef MTSYN_CASE_STUDIES_HPP
#define MTSYN_CASE_STUDIES_HPP

#include <string>

#include "mtsyn/props.hpp"

namespace mtsyn {

/// Two event buses p1..pn and q1..qm: the monitor flags once both buses
/// have been seen in order, then G F acc. The in-sequence helper is
/// expanded into an ite chain, so only the guard grows with n and m.
std::string two_bus_spec_text(int n, int m);

/// ite chain computing how far the bus `x` has advanced past `counter`
/// after the current event.
std::string max_in_seq_text(const std::string& x, const std::string& counter, int n);

/// One-state interchange controller emitting every output in `on` forever.
std::string constant_controller_text(const PropTable& props, Letter on);

}  // namespace mtsyn

#endif  // MTSYN_CASE_STUDIES_HPP
