#include "mtsyn/dot.hpp"

#include <sstream>

namespace mtsyn {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string outputs_label(const PropTable& props, Letter l) { return props.format(l); }

}  // namespace

std::string monitor_dot(const Monitor& m) {
  const ExprNames names = m.names();
  std::ostringstream out;
  out << "digraph monitor {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (StateId q = 0; q < m.states.size(); ++q) {
    out << "  " << quoted(m.states[q]) << " [shape="
        << (m.is_flagging(q) ? "doublecircle" : "circle");
    if (q == m.sink) out << ", style=dashed";
    out << "];\n";
  }
  out << "  __start -> " << quoted(m.states[m.initial]) << ";\n";
  for (const auto& t : m.transitions) {
    std::string label = to_string(t.guard, names);
    if (!t.action.empty()) label += " / " + to_string(t.action, names);
    out << "  " << quoted(m.states[t.source]) << " -> " << quoted(m.states[t.target])
        << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string controller_dot(const SymbolicController& sc) {
  const ExprNames names = sc.names();
  std::ostringstream out;
  out << "digraph controller {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::uint32_t q = 0; q < sc.monitor_states.size(); ++q) {
    if (sc.monitor_flagging[q]) continue;
    out << "  " << quoted(sc.location_name({Location::Part::monitor, q})) << " [label="
        << quoted(sc.monitor_states[q]) << ", shape=circle"
        << (q == sc.monitor_sink ? ", style=dashed" : "") << "];\n";
  }
  for (std::uint32_t s = 0; s < sc.controller_states.size(); ++s)
    out << "  " << quoted(sc.location_name({Location::Part::controller, s})) << " [label="
        << quoted(sc.controller_states[s]) << ", shape=box];\n";
  out << "  __start -> " << quoted(sc.location_name(sc.initial)) << ";\n";
  for (const auto& t : sc.transitions) {
    std::string label = to_string(t.guard, names);
    if (!t.action.empty()) label += " / " + to_string(t.action, names);
    label += " / " + outputs_label(sc.props, t.outputs);
    out << "  " << quoted(sc.location_name(t.source)) << " -> "
        << quoted(sc.location_name(t.target)) << " [label=" << quoted(label);
    if (t.rule == Rule::reset) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string mealy_dot(const MealyMachine& m) {
  const PropTable& props = m.props;
  std::ostringstream out;
  out << "digraph mealy {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (std::uint32_t s = 0; s < m.states.size(); ++s)
    out << "  " << quoted(m.states[s]) << " [shape="
        << (m.is_accepting(s) ? "doublecircle" : "circle") << "];\n";
  out << "  __start -> " << quoted(m.states[m.initial]) << ";\n";
  for (std::uint32_t s = 0; s < m.states.size(); ++s) {
    for (const auto& e : m.edges[s]) {
      std::string pat;
      for (std::size_t k = 0; k < props.num_inputs(); ++k)
        pat += !(e.input.care & bit(k)) ? '-' : (e.input.value & bit(k)) ? '1' : '0';
      out << "  " << quoted(m.states[s]) << " -> " << quoted(m.states[e.target])
          << " [label=" << quoted(pat + " / " + outputs_label(props, e.output)) << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace mtsyn
