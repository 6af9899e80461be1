#include "mtsyn/synth.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "mtsyn/interchange.hpp"

namespace mtsyn {

const char* const kIncompletenessCaveat =
    "note: reducing the trigger to t(pi) is sound but not complete; the "
    "specification itself may still be realisable";

Backend parse_backend(std::string_view text) {
  if (text == "builtin") return {};
  constexpr std::string_view prefix = "external:";
  if (text.substr(0, prefix.size()) != prefix || text.size() == prefix.size())
    throw Error("unknown backend '" + std::string(text) +
                "' (expected builtin or external:<file-or-command>)");
  std::string arg(text.substr(prefix.size()));
  std::error_code ec;
  bool file = std::filesystem::is_regular_file(arg, ec);
  return {file ? Backend::Kind::external_file : Backend::Kind::external_command, arg};
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
  return out;
}

MealyMachine one_state(const PropTable& props, bool accepting) {
  MealyMachine m;
  m.props = props;
  m.states = {"idle"};
  m.accepting = {static_cast<char>(accepting)};
  m.edges = {{MealyEdge{InputCube{}, 0, 0}}};
  return m;
}

}  // namespace

std::optional<MealyMachine> run_external(const std::string& command, const Formula& f,
                                         const PropTable& props) {
  std::string cmd = command + " --formula " + shell_quote(to_string(f)) + " --inputs " +
                    shell_quote(join(props.inputs())) + " --outputs " +
                    shell_quote(join(props.outputs()));
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot start external backend: " + command);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  std::istringstream first(out);
  std::string word;
  first >> word;
  if (word == "UNREALIZABLE") return std::nullopt;
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw Error("external backend failed: " + command);
  return import_controller(out, props);
}

SynthesisResult synthesize(const MttlSpec& spec, const Backend& backend) {
  const bool repeat = spec.trigger == TriggerKind::repeat;
  std::optional<MealyMachine> c;
  switch (backend.kind) {
    case Backend::Kind::builtin: {
      if (!is_cosafety(spec.body))
        throw UnsupportedError("builtin backend needs a co-safety body; use an external backend");
      Dfw d = build_dfw(normalize(spec.body));
      c = solve_reachability(d, spec.assumption, spec.props);
      if (c && !repeat) c = without_accepting(std::move(*c));
      break;
    }
    case Backend::Kind::external_file:
    case Backend::Kind::external_command: {
      if (backend.kind == Backend::Kind::external_file) {
        std::ifstream in(backend.argument);
        if (!in) throw Error("cannot read " + backend.argument);
        std::stringstream ss;
        ss << in.rdbuf();
        c = import_controller(ss.str(), spec.props);
      } else {
        c = run_external(backend.argument, t_of(spec), spec.props);
      }
      if (c) {
        c = without_accepting(std::move(*c));
        if (repeat) c = mark_tight(*c, build_dfw(normalize(spec.body)));
      }
      break;
    }
  }
  SynthesisResult r;
  if (!c) {
    if (!cannot_flag(spec.monitor)) return r;
    r.trivial = true;
    c = one_state(spec.props, repeat);
  }
  r.controller = compose(spec.monitor, *c,
                         repeat ? ComposeMode::repeating : ComposeMode::simple);
  r.machine = std::move(c);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

void flatten_or(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Formula::Op::lor) {
    flatten_or(f.child(0), out);
    flatten_or(f.child(1), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::size_t exclusive_case_count(const Formula& body) {
  std::vector<Formula> parts;
  flatten_or(normalize(body), parts);
  return parts.size() == 1 ? 1 : (std::size_t{1} << parts.size()) - 1;
}

std::pair<Formula, std::string> disambiguate(const Formula& body,
                                             const std::set<std::string>& taken) {
  if (!is_cosafety(body)) throw Error("disambiguate needs a co-safety body");
  std::set<std::string> used = taken;
  for (const auto& p : propositions(body)) used.insert(p);
  std::string fresh = "witness";
  for (int k = 1; used.count(fresh); ++k) fresh = "witness_" + std::to_string(k);

  std::vector<Formula> parts;
  flatten_or(normalize(body), parts);
  if (parts.size() > 16) throw Error("disambiguate: too many disjuncts");
  Formula cases = parts.front();
  if (parts.size() > 1) {
    std::vector<Formula> disjuncts;
    for (std::size_t mask = 1; mask < (std::size_t{1} << parts.size()); ++mask) {
      std::vector<Formula> conj;
      for (std::size_t i = 0; i < parts.size(); ++i)
        conj.push_back(mask & (std::size_t{1} << i) ? parts[i] : Formula::neg(parts[i]));
      disjuncts.push_back(Formula::conj(conj));
    }
    cases = Formula::disj(disjuncts);
  }
  Formula w = Formula::prop(fresh);
  Formula once = Formula::conj(Formula::U(Formula::neg(w), w),
                               Formula::G(Formula::implies(w, Formula::X(Formula::G(Formula::neg(w))))));
  return {Formula::conj(cases, once), fresh};
}

}  // namespace mtsyn
