#ifndef MTSYN_SYNTH_HPP
#define MTSYN_SYNTH_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>

#include "mtsyn/compose.hpp"
#include "mtsyn/game.hpp"
#include "mtsyn/mttl.hpp"

namespace mtsyn {

struct Backend {
  enum class Kind { builtin, external_file, external_command };
  Kind kind = Kind::builtin;
  std::string argument;  // file path or command line
};

/// "builtin", "external:<file>" (an existing file) or "external:<command>".
Backend parse_backend(std::string_view text);

/// Runs an external synthesizer command. It receives
///   --formula '<ltl>' --inputs a,b --outputs c
/// and prints an interchange document, or a first line UNREALIZABLE.
/// Returns nullopt for UNREALIZABLE; throws Error on failure.
std::optional<MealyMachine> run_external(const std::string& command, const Formula& f,
                                         const PropTable& props);

struct SynthesisResult {
  std::optional<MealyMachine> machine;  // embedded controller
  std::optional<SymbolicController> controller;
  bool trivial = false;  // monitor can never flag, any controller works
};

/// Text printed after an unrealisable verdict.
extern const char* const kIncompletenessCaveat;

/// t(pi) through the backend, then M |> C. An unrealisable t(pi) leaves
/// `controller` empty unless the monitor cannot flag at all.
SynthesisResult synthesize(const MttlSpec& spec, const Backend& backend);

/// Splits the top-level disjunction of a co-safety body into its
/// 2^k - 1 mutually exclusive cases and conjoins a guarantee that the
/// fresh output proposition is raised exactly once. Returns the new body
/// and the fresh name (not in `taken`).
std::pair<Formula, std::string> disambiguate(const Formula& body,
                                             const std::set<std::string>& taken);

/// Number of exclusive cases disambiguate would produce.
std::size_t exclusive_case_count(const Formula& body);

}  // namespace mtsyn

#endif  // MTSYN_SYNTH_HPP
