#ifndef MTSYN_CLI_HPP
#define MTSYN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "mtsyn/spec_file.hpp"

namespace mtsyn::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,       // invalid spec, or failed verification
  kUnrealisable = 2,
  kIo = 3,
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

/// "n=2" -> {"n", 2}; throws Error on malformed text.
std::pair<std::string, std::int64_t> parse_param(const std::string& text);

int cmd_check(const std::string& spec_path, const ParamBindings& params, Streams io);

struct SynthesizeOptions {
  std::string backend = "builtin";
  std::optional<std::string> out;      // controller file; stdout when absent
  std::optional<std::string> dot;
  std::optional<std::string> machine;  // embedded Mealy machine, interchange
};
int cmd_synthesize(const std::string& spec_path, const ParamBindings& params,
                   const SynthesizeOptions& opt, Streams io);

int cmd_eval_trace(const std::string& spec_path, const std::string& trace_path,
                   std::size_t bound, const ParamBindings& params, Streams io);

int cmd_simulate(const std::string& controller_path, Streams io);

/// Accepts a spec, a controller file or an interchange document.
int cmd_export(const std::string& path, const std::string& format,
               const std::optional<std::string>& out, const ParamBindings& params, Streams io);

struct VerifyCliOptions {
  std::size_t episodes = 1000;
  std::size_t horizon = 40;
  std::uint64_t seed = 1;
};
int cmd_verify(const std::string& spec_path, const std::string& controller_path,
               const ParamBindings& params, const VerifyCliOptions& opt, Streams io);

/// Writes two_bus_<n>_<m>.spec and two_bus_<n>_<m>_always_acc.json.
int cmd_generate_two_bus(int n, int m, const std::string& dir, Streams io);

}  // namespace mtsyn::cli

#endif  // MTSYN_CLI_HPP
