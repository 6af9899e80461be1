#include "mtsyn/compose.hpp"

#include <map>

#include <json.hpp>

namespace mtsyn {

std::string_view mode_name(ComposeMode m) {
  return m == ComposeMode::simple ? "simple" : "repeating";
}

std::string SymbolicController::location_name(const Location& l) const {
  return l.in_monitor() ? "monitor:" + monitor_states.at(l.index)
                        : "controller:" + controller_states.at(l.index);
}

ExprNames SymbolicController::names() const {
  ExprNames n;
  for (const auto& v : vars) n.vars.push_back(v.name);
  n.inputs = props.inputs();
  return n;
}

namespace {

Expr cube_guard(const InputCube& c, std::size_t num_inputs) {
  std::vector<Expr> lits;
  for (std::size_t k = 0; k < num_inputs; ++k) {
    if (!(c.care & bit(k))) continue;
    Expr atom = Expr::member(k);
    lits.push_back((c.value & bit(k)) ? atom : Expr::unary(Expr::Op::lnot, atom));
  }
  return Expr::conj(lits);
}

struct EdgeGroup {
  Letter output = 0;
  std::uint32_t target = 0;
  Expr guard;
};

/// Edges of one controller state merged by (output, target), in order of
/// first appearance.
std::vector<EdgeGroup> grouped_edges(const MealyMachine& c, std::uint32_t s) {
  std::vector<EdgeGroup> groups;
  std::vector<std::vector<Expr>> cubes;
  std::map<std::pair<Letter, std::uint32_t>, std::size_t> slot;
  const std::size_t n = c.props.num_inputs();
  for (const auto& e : c.edges[s]) {
    auto [it, fresh] = slot.emplace(std::make_pair(e.output, e.target), groups.size());
    if (fresh) {
      groups.push_back({e.output, e.target, Expr()});
      cubes.emplace_back();
    }
    cubes[it->second].push_back(cube_guard(e.input, n));
  }
  for (std::size_t g = 0; g < groups.size(); ++g) groups[g].guard = Expr::disj(cubes[g]);
  return groups;
}

/// Drops controller states no run can enter (the controller's own initial
/// state once its first move is fused, accepting states once redirected).
void prune_controller_states(SymbolicController& sc) {
  std::vector<char> live(sc.controller_states.size(), 0);
  std::vector<std::uint32_t> todo;
  auto mark = [&](const Location& l) {
    if (!l.in_monitor() && !live[l.index]) {
      live[l.index] = 1;
      todo.push_back(l.index);
    }
  };
  for (const auto& t : sc.transitions)
    if (t.source.in_monitor()) mark(t.target);
  while (!todo.empty()) {
    std::uint32_t s = todo.back();
    todo.pop_back();
    for (const auto& t : sc.transitions)
      if (!t.source.in_monitor() && t.source.index == s) mark(t.target);
  }
  std::vector<std::uint32_t> remap(live.size(), 0);
  std::vector<std::string> names;
  for (std::uint32_t s = 0; s < live.size(); ++s)
    if (live[s]) {
      remap[s] = static_cast<std::uint32_t>(names.size());
      names.push_back(sc.controller_states[s]);
    }
  std::vector<ControllerTransition> kept;
  for (auto& t : sc.transitions) {
    if (!t.source.in_monitor()) {
      if (!live[t.source.index]) continue;
      t.source.index = remap[t.source.index];
    }
    if (!t.target.in_monitor()) t.target.index = remap[t.target.index];
    kept.push_back(std::move(t));
  }
  sc.controller_states = std::move(names);
  sc.transitions = std::move(kept);
}

}  // namespace

SymbolicController compose(const Monitor& m, const MealyMachine& c, ComposeMode mode) {
  if (c.props.inputs() != m.inputs)
    throw Error("compose: controller inputs do not match the monitor alphabet");
  if (mode == ComposeMode::simple && c.has_accepting())
    throw Error("compose: simple mode needs a controller without accepting states");
  if (mode == ComposeMode::repeating && !c.has_accepting())
    throw Error("compose: repeating mode needs a tight controller (accepting states)");
  check_machine(c);

  SymbolicController sc;
  sc.props = c.props;
  sc.vars = m.vars;
  sc.monitor_states = m.states;
  sc.monitor_flagging.assign(m.states.size(), 0);
  for (StateId f : m.flagging) sc.monitor_flagging[f] = 1;
  sc.monitor_sink = static_cast<std::uint32_t>(m.sink);
  sc.controller_states = c.states;
  sc.mode = mode;
  sc.initial = {Location::Part::monitor, static_cast<std::uint32_t>(m.initial)};

  const Location restart = sc.initial;
  const Action reset = reset_action(m.vars);
  auto ctrl = [](std::uint32_t s) { return Location{Location::Part::controller, s}; };
  auto into = [&](std::uint32_t target, Rule rule, Action action, ControllerTransition& t) {
    if (mode == ComposeMode::repeating && c.is_accepting(target)) {
      t.target = restart;
      t.action = reset;
      t.rule = Rule::reset;
    } else {
      t.target = ctrl(target);
      t.action = std::move(action);
      t.rule = rule;
    }
  };

  const auto initial_groups = grouped_edges(c, c.initial);
  for (const auto& mt : m.transitions) {
    if (m.is_flagging(mt.source)) continue;  // flag states are never entered
    Location src{Location::Part::monitor, static_cast<std::uint32_t>(mt.source)};
    if (!m.is_flagging(mt.target)) {
      sc.transitions.push_back({src, mt.guard, mt.action, 0,
                                {Location::Part::monitor, static_cast<std::uint32_t>(mt.target)},
                                Rule::monitor});
      continue;
    }
    for (const auto& g : initial_groups) {
      ControllerTransition t;
      t.source = src;
      t.guard = Expr::conj({mt.guard, g.guard});
      t.outputs = g.output;
      into(g.target, Rule::fused, mt.action, t);
      sc.transitions.push_back(std::move(t));
    }
  }
  for (std::uint32_t s = 0; s < c.states.size(); ++s) {
    for (const auto& g : grouped_edges(c, s)) {
      ControllerTransition t;
      t.source = ctrl(s);
      t.guard = g.guard;
      t.outputs = g.output;
      into(g.target, Rule::controller, {}, t);
      sc.transitions.push_back(std::move(t));
    }
  }
  prune_controller_states(sc);
  return sc;
}

ControllerState initial_state(const SymbolicController& sc) {
  return {sc.initial, initial_valuation(sc.vars)};
}

ControllerStep controller_step(const SymbolicController& sc, const ControllerState& s,
                               Letter event) {
  event &= sc.props.input_mask();
  if (s.loc.in_monitor() && s.loc.index == sc.monitor_sink) return {s, 0, std::nullopt};
  for (std::size_t i = 0; i < sc.transitions.size(); ++i) {
    const auto& t = sc.transitions[i];
    if (t.source != s.loc) continue;
    if (!t.guard.eval(event, s.val).as_bool()) continue;
    return {{t.target, apply_action(t.action, event, s.val)}, t.outputs, i};
  }
  if (s.loc.in_monitor()) return {s, 0, std::nullopt};
  throw EvalError("controller location " + sc.location_name(s.loc) +
                  " has no transition for input " + sc.props.format(event));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

using nlohmann::json;

constexpr const char* kFormat = "mtsyn-controller/1";

json vars_json(const std::vector<VarDecl>& vars) {
  json out = json::array();
  for (const auto& v : vars) {
    json j;
    j["name"] = v.name;
    j["kind"] = std::string(kind_name(v.kind));
    j["initial"] = format_value(Value{v.kind, v.initial});
    if (v.parameter) j["parameter"] = true;
    out.push_back(j);
  }
  return out;
}

}  // namespace

std::string serialize_controller(const SymbolicController& sc) {
  const ExprNames names = sc.names();
  json doc;
  doc["format"] = kFormat;
  doc["mode"] = std::string(mode_name(sc.mode));
  doc["inputs"] = sc.props.inputs();
  doc["outputs"] = sc.props.outputs();
  doc["vars"] = vars_json(sc.vars);
  doc["monitor_states"] = sc.monitor_states;
  json flags = json::array();
  for (std::size_t q = 0; q < sc.monitor_states.size(); ++q)
    if (sc.monitor_flagging[q]) flags.push_back(sc.monitor_states[q]);
  doc["monitor_flagging"] = flags;
  doc["monitor_sink"] = sc.monitor_states.at(sc.monitor_sink);
  doc["controller_states"] = sc.controller_states;
  doc["initial"] = sc.location_name(sc.initial);
  json ts = json::array();
  for (const auto& t : sc.transitions) {
    json j;
    j["from"] = sc.location_name(t.source);
    j["guard"] = to_string(t.guard, names);
    j["action"] = to_string(t.action, names);
    j["outputs"] = sc.props.names_of(t.outputs);
    j["to"] = sc.location_name(t.target);
    j["rule"] = static_cast<int>(t.rule);
    ts.push_back(j);
  }
  doc["transitions"] = ts;
  return doc.dump(2) + "\n";
}

SymbolicController load_controller(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("controller file: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kFormat)
      throw Error("controller file: missing or unsupported format tag");
    SymbolicController sc;
    sc.props = PropTable(doc.at("inputs").get<std::vector<std::string>>(),
                         doc.at("outputs").get<std::vector<std::string>>());
    std::string mode = doc.at("mode").get<std::string>();
    if (mode != "simple" && mode != "repeating") throw Error("controller file: bad mode " + mode);
    sc.mode = mode == "simple" ? ComposeMode::simple : ComposeMode::repeating;
    for (const auto& v : doc.at("vars")) {
      VarDecl d;
      d.name = v.at("name").get<std::string>();
      std::string kind = v.at("kind").get<std::string>();
      std::string init = v.at("initial").get<std::string>();
      if (kind == "bool") {
        d.kind = Kind::boolean;
        if (init != "true" && init != "false") throw Error("controller file: bad bool " + init);
        d.initial = init == "true";
      } else if (kind == "int") {
        d.kind = Kind::integer;
        std::size_t used = 0;
        d.initial = std::stoll(init, &used);
        if (used != init.size()) throw Error("controller file: bad integer " + init);
      } else {
        throw Error("controller file: bad kind " + kind);
      }
      d.parameter = v.value("parameter", false);
      sc.vars.push_back(d);
    }
    sc.monitor_states = doc.at("monitor_states").get<std::vector<std::string>>();
    sc.controller_states = doc.at("controller_states").get<std::vector<std::string>>();
    std::map<std::string, Location> where;
    for (std::uint32_t q = 0; q < sc.monitor_states.size(); ++q)
      where["monitor:" + sc.monitor_states[q]] = {Location::Part::monitor, q};
    for (std::uint32_t s = 0; s < sc.controller_states.size(); ++s)
      where["controller:" + sc.controller_states[s]] = {Location::Part::controller, s};
    if (where.size() != sc.num_locations()) throw Error("controller file: duplicate location");
    auto loc = [&](const json& j) {
      auto it = where.find(j.get<std::string>());
      if (it == where.end()) throw Error("controller file: unknown location " + j.dump());
      return it->second;
    };
    sc.monitor_flagging.assign(sc.monitor_states.size(), 0);
    for (const auto& f : doc.at("monitor_flagging"))
      sc.monitor_flagging[loc("monitor:" + f.get<std::string>()).index] = 1;
    sc.monitor_sink = loc("monitor:" + doc.at("monitor_sink").get<std::string>()).index;
    sc.initial = loc(doc.at("initial"));
    ExprScope scope{&sc.vars, &sc.props.inputs()};
    for (const auto& j : doc.at("transitions")) {
      ControllerTransition t;
      t.source = loc(j.at("from"));
      t.guard = parse_expr(j.at("guard").get<std::string>(), scope);
      check_kind(t.guard, sc.vars, sc.props.num_inputs());
      t.action = parse_action(j.at("action").get<std::string>(), scope);
      check_action(t.action, sc.vars, sc.props.num_inputs());
      for (const auto& o : j.at("outputs")) {
        auto name = o.get<std::string>();
        if (!sc.props.is_output(name)) throw Error("controller file: unknown output " + name);
        t.outputs |= bit(*sc.props.index_of(name));
      }
      t.target = loc(j.at("to"));
      int rule = j.at("rule").get<int>();
      if (rule < 1 || rule > 4) throw Error("controller file: bad rule number");
      t.rule = static_cast<Rule>(rule);
      sc.transitions.push_back(std::move(t));
    }
    return sc;
  } catch (const json::exception& e) {
    throw Error(std::string("controller file: ") + e.what());
  }
}

}  // namespace mtsyn
