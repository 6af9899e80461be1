#ifndef MTSYN_SPEC_FILE_HPP
#define MTSYN_SPEC_FILE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "mtsyn/mttl.hpp"

namespace mtsyn {

using ParamBindings = std::map<std::string, std::int64_t>;

/// Parses the line-based spec language (grammar in README.md).
/// `params` overrides `param` defaults; binding an undeclared parameter
/// is an error. Throws ParseError with a line/column on syntax errors.
MttlSpec parse_spec(std::string_view text, const ParamBindings& params = {});

/// Canonical text; parse_spec(format_spec(s)) == s.
std::string format_spec(const MttlSpec& spec);

/// Trace document: {"prefix": [[...], ...], "loop": [[...], ...]} where each
/// event lists the propositions that hold. Names must be declared in `props`.
LassoTrace parse_trace(std::string_view json_text, const PropTable& props);
std::string format_trace(const LassoTrace& t, const PropTable& props);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace mtsyn

#endif  // MTSYN_SPEC_FILE_HPP
