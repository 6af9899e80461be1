#include "mtsyn/props.hpp"

#include <algorithm>
#include <set>

#include "mtsyn/error.hpp"

namespace mtsyn {

PropTable::PropTable(std::vector<std::string> inputs,
                     std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
  if (size() > max_propositions)
    throw Error("at most 64 propositions are supported");
  std::set<std::string> seen;
  for (const auto& n : inputs_)
    if (!seen.insert(n).second) throw Error("duplicate proposition '" + n + "'");
  for (const auto& n : outputs_)
    if (!seen.insert(n).second)
      throw Error("proposition '" + n + "' is both input and output");
}

std::optional<std::size_t> PropTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < inputs_.size(); ++i)
    if (inputs_[i] == name) return i;
  for (std::size_t i = 0; i < outputs_.size(); ++i)
    if (outputs_[i] == name) return inputs_.size() + i;
  return std::nullopt;
}

bool PropTable::is_input(std::string_view name) const {
  return std::find(inputs_.begin(), inputs_.end(), name) != inputs_.end();
}

bool PropTable::is_output(std::string_view name) const {
  return std::find(outputs_.begin(), outputs_.end(), name) != outputs_.end();
}

const std::string& PropTable::name(std::size_t index) const {
  return index < inputs_.size() ? inputs_[index]
                                : outputs_.at(index - inputs_.size());
}

std::vector<std::string> PropTable::names_of(Letter l) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (l & bit(i)) out.push_back(name(i));
  return out;
}

std::string PropTable::format(Letter l) const {
  std::string s = "{";
  bool first = true;
  for (const auto& n : names_of(l)) {
    if (!first) s += ", ";
    s += n;
    first = false;
  }
  return s + "}";
}

}  // namespace mtsyn
