#include "mtsyn/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "mtsyn/case_studies.hpp"
#include "mtsyn/dot.hpp"
#include "mtsyn/interchange.hpp"
#include "mtsyn/synth.hpp"

namespace mtsyn::cli {

namespace {

std::string where(const std::string& path, SourceLoc loc) {
  if (loc.line == 0) return path + ": ";
  return path + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": ";
}

/// Loads and checks a spec; prints diagnostics and returns nullopt (with
/// `code` set) when it cannot be used.
std::optional<MttlSpec> load_spec(const std::string& path, const ParamBindings& params,
                                  Streams io, int& code) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    code = kIo;
    return std::nullopt;
  }
  MttlSpec spec;
  try {
    spec = parse_spec(text, params);
  } catch (const ParseError& e) {
    io.err << path << ":" << e.what() << "\n";
    code = kInvalid;
    return std::nullopt;
  } catch (const Error& e) {
    io.err << path << ": " << e.what() << "\n";
    code = kInvalid;
    return std::nullopt;
  }
  auto diags = check_spec(spec);
  for (const auto& d : diags) io.err << where(path, d.loc) << "error: " << d.message << "\n";
  if (!diags.empty()) {
    code = kInvalid;
    return std::nullopt;
  }
  code = kOk;
  return spec;
}

int write_or_print(const std::optional<std::string>& path, const std::string& content,
                   Streams io) {
  if (!path) {
    io.out << content;
    return kOk;
  }
  try {
    write_file(*path, content);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}

std::string valuation_text(const SymbolicController& sc, const ControllerState& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < sc.vars.size(); ++i) {
    if (i) out += ", ";
    out += sc.vars[i].name + "=" + format_value(s.val[i]);
  }
  return out + "}";
}

std::string location_text(const SymbolicController& sc, const ControllerState& s) {
  std::string out = sc.location_name(s.loc);
  if (s.loc.in_monitor()) out += " " + valuation_text(sc, s);
  return out;
}

}  // namespace

std::pair<std::string, std::int64_t> parse_param(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size())
    throw Error("parameter binding must look like name=value: '" + text + "'");
  std::string name = text.substr(0, eq), value = text.substr(eq + 1);
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) throw Error("parameter value must be an integer: '" + text + "'");
  return {name, v};
}

int cmd_check(const std::string& spec_path, const ParamBindings& params, Streams io) {
  int code = kOk;
  auto spec = load_spec(spec_path, params, io, code);
  if (!spec) return code;
  for (const auto& d : lint(spec->monitor))
    io.err << where(spec_path, d.loc) << "warning: " << d.message << "\n";
  io.out << "ok: trigger " << trigger_name(spec->trigger) << ", body "
         << (is_cosafety(spec->body) ? "co-safety" : "general") << ", assumption "
         << to_string(spec->assumption) << ", monitor "
         << spec->monitor.states.size() << " states / " << spec->monitor.transitions.size()
         << " transitions\n";
  return kOk;
}

int cmd_synthesize(const std::string& spec_path, const ParamBindings& params,
                   const SynthesizeOptions& opt, Streams io) {
  int code = kOk;
  auto spec = load_spec(spec_path, params, io, code);
  if (!spec) return code;
  SynthesisResult r;
  try {
    r = synthesize(*spec, parse_backend(opt.backend));
  } catch (const UnsupportedError& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    io.err << "error: backend: " << e.what() << "\n";
    return kIo;
  }
  if (!r.controller) {
    io.err << "t(π) unrealisable\n" << kIncompletenessCaveat << "\n";
    return kUnrealisable;
  }
  if (r.trivial)
    io.err << "note: t(π) unrealisable but the monitor can never flag; "
              "composed with a silent controller\n";
  const auto& sc = *r.controller;
  if (int c = write_or_print(opt.out, serialize_controller(sc), io); c != kOk) return c;
  if (opt.dot)
    if (int c = write_or_print(opt.dot, controller_dot(sc), io); c != kOk) return c;
  if (opt.machine)
    if (int c = write_or_print(opt.machine, export_controller(*r.machine), io); c != kOk) return c;
  io.err << "controller: " << sc.num_locations() << " locations, " << sc.transitions.size()
         << " transitions (embedded machine " << r.machine->states.size() << " states)\n";
  return kOk;
}

int cmd_eval_trace(const std::string& spec_path, const std::string& trace_path,
                   std::size_t bound, const ParamBindings& params, Streams io) {
  int code = kOk;
  auto spec = load_spec(spec_path, params, io, code);
  if (!spec) return code;
  LassoTrace t;
  try {
    t = parse_trace(read_file(trace_path), spec->props);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    io.err << trace_path << ": " << e.what() << "\n";
    return kInvalid;
  }
  Verdict v = oracle(*spec, t, bound);
  io.out << Verdict::tag_name(v.tag);
  if (!v.reason.empty()) io.out << ": " << v.reason;
  io.out << "\n";
  if (!v.flags.empty()) {
    io.out << "flags:";
    for (auto j : v.flags) io.out << " " << j;
    io.out << "\n";
  }
  if (!v.windows.empty()) {
    io.out << "windows:";
    for (auto [a, b] : v.windows) io.out << " [" << a << "," << b << "]";
    io.out << "\n";
  }
  return kOk;
}

int cmd_simulate(const std::string& controller_path, Streams io) {
  SymbolicController sc;
  try {
    sc = load_controller(read_file(controller_path));
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    io.err << controller_path << ": " << e.what() << "\n";
    return kInvalid;
  }
  ControllerState s = initial_state(sc);
  io.out << "at " << location_text(sc, s) << "\n";
  std::string line;
  std::size_t step = 0;
  while (std::getline(io.in, line)) {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream words(line);
    std::vector<std::string> names;
    for (std::string w; words >> w;) names.push_back(w);
    if (names.size() == 1 && names[0] == "quit") break;
    Letter event = 0;
    bool bad = false;
    for (const auto& n : names) {
      if (!sc.props.is_input(n)) {
        io.out << "unknown input proposition '" << n << "'\n";
        bad = true;
        break;
      }
      event |= bit(*sc.props.index_of(n));
    }
    if (bad) continue;
    ControllerStep st;
    try {
      st = controller_step(sc, s, event);
    } catch (const EvalError& e) {
      io.err << "error: " << e.what() << "\n";
      return kInvalid;
    }
    io.out << "step " << step++ << ": in " << sc.props.format(event) << " out "
           << sc.props.format(st.outputs);
    if (st.transition) {
      Rule r = sc.transitions[*st.transition].rule;
      if (r == Rule::fused) io.out << " [flag: controller takes over]";
      if (r == Rule::reset) io.out << " [reset: monitor restarts]";
    } else if (s.loc.in_monitor()) {
      io.out << (s.loc.index == sc.monitor_sink ? " [sink]" : " [stutter]");
    }
    s = st.next;
    io.out << " -> " << location_text(sc, s) << "\n";
  }
  return kOk;
}

int cmd_export(const std::string& path, const std::string& format,
               const std::optional<std::string>& out, const ParamBindings& params, Streams io) {
  if (format != "dot" && format != "interchange") {
    io.err << "error: unknown export format '" << format << "' (dot or interchange)\n";
    return kInvalid;
  }
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  }
  std::string tag;
  try {
    auto doc = nlohmann::json::parse(text);
    if (doc.is_object()) tag = doc.value("format", "");
  } catch (const nlohmann::json::exception&) {
  }
  try {
    if (tag == "mtsyn-controller/1") {
      if (format != "dot") {
        io.err << "error: a composed controller is symbolic; only dot export applies\n";
        return kInvalid;
      }
      return write_or_print(out, controller_dot(load_controller(text)), io);
    }
    if (tag == "mtsyn-mealy/1") {
      MealyMachine m = import_controller(text);
      return write_or_print(out, format == "dot" ? mealy_dot(m) : export_controller(m), io);
    }
  } catch (const Error& e) {
    io.err << path << ": " << e.what() << "\n";
    return kInvalid;
  }
  if (format != "dot") {
    io.err << "error: interchange export needs a Mealy machine document\n";
    return kInvalid;
  }
  int code = kOk;
  auto spec = load_spec(path, params, io, code);
  if (!spec) return code;
  return write_or_print(out, monitor_dot(spec->monitor), io);
}

int cmd_verify(const std::string& spec_path, const std::string& controller_path,
               const ParamBindings& params, const VerifyCliOptions& opt, Streams io) {
  int code = kOk;
  auto spec = load_spec(spec_path, params, io, code);
  if (!spec) return code;
  SymbolicController sc;
  try {
    sc = load_controller(read_file(controller_path));
  } catch (const IoError& e) {
    io.err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    io.err << controller_path << ": " << e.what() << "\n";
    return kInvalid;
  }
  VerifyOptions vo;
  vo.episodes = opt.episodes;
  vo.horizon = opt.horizon;
  vo.seed = opt.seed;
  VerifyReport r;
  try {
    r = verify_against_oracle(*spec, sc, vo);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  io.out << "episodes " << r.episodes << ": sat " << r.sat << " (vacuous " << r.vacuous
         << "), unsat " << r.unsat << ", unknown " << r.unknown << "\n";
  if (r.counterexample) {
    io.out << "counterexample: " << format_trace(*r.counterexample, spec->props);
    io.out << "reason: " << r.counterexample_verdict->reason << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_generate_two_bus(int n, int m, const std::string& dir, Streams io) {
  std::string spec_text;
  try {
    spec_text = two_bus_spec_text(n, m);
  } catch (const Error& e) {
    io.err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  MttlSpec spec = parse_spec(spec_text);
  const std::string stem = "two_bus_" + std::to_string(n) + "_" + std::to_string(m);
  const auto base = std::filesystem::path(dir);
  const std::string spec_path = (base / (stem + ".spec")).string();
  const std::string ctrl_path = (base / (stem + "_always_acc.json")).string();
  if (int c = write_or_print(spec_path, spec_text, io); c != kOk) return c;
  if (int c = write_or_print(ctrl_path,
                             constant_controller_text(spec.props, spec.props.output_mask()), io);
      c != kOk)
    return c;
  io.out << "wrote " << spec_path << "\nwrote " << ctrl_path << "\n";
  return kOk;
}

}  // namespace mtsyn::cli
