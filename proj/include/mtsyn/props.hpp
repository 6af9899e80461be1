#ifndef MTSYN_PROPS_HPP
#define MTSYN_PROPS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtsyn {

/// A set of propositions encoded as a bitmask over a PropTable.
using Letter = std::uint64_t;

inline constexpr std::size_t max_propositions = 64;

inline constexpr Letter bit(std::size_t i) { return Letter{1} << i; }

inline constexpr Letter low_mask(std::size_t n) {
  return n >= 64 ? ~Letter{0} : (Letter{1} << n) - 1;
}

/// Partitioned proposition vocabulary. Inputs occupy bits [0, |inputs|),
/// outputs the bits right after them, so masking a letter with
/// input_mask() yields the monitor-visible event.
class PropTable {
 public:
  PropTable() = default;
  PropTable(std::vector<std::string> inputs, std::vector<std::string> outputs);

  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }
  std::size_t size() const { return inputs_.size() + outputs_.size(); }

  Letter input_mask() const { return low_mask(inputs_.size()); }
  Letter output_mask() const { return low_mask(size()) & ~input_mask(); }

  std::optional<std::size_t> index_of(std::string_view name) const;
  bool is_input(std::string_view name) const;
  bool is_output(std::string_view name) const;
  const std::string& name(std::size_t index) const;

  /// Renders a letter as "{a, b}" in table order.
  std::string format(Letter l) const;
  std::vector<std::string> names_of(Letter l) const;

  bool operator==(const PropTable&) const = default;

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace mtsyn

#endif  // MTSYN_PROPS_HPP
