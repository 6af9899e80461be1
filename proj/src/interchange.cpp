#include "mtsyn/interchange.hpp"

#include <map>

#include <json.hpp>

namespace mtsyn {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "mtsyn-mealy/1";

std::vector<std::string> string_list(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(std::string("interchange: missing '") + key + "'");
  const json& arr = doc.at(key);
  if (!arr.is_array()) throw Error(std::string("interchange: '") + key + "' must be an array");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) throw Error(std::string("interchange: '") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

MealyMachine read(const json& doc, const PropTable& props) {
  if (!doc.is_object()) throw Error("interchange: document must be an object");
  if (doc.contains("format") && doc.at("format") != kFormat)
    throw Error("interchange: unsupported format " + doc.at("format").dump());

  // Document input k -> table bit.
  std::vector<std::size_t> in_bit;
  for (const auto& name : string_list(doc, "inputs")) {
    if (!props.is_input(name)) throw Error("interchange: unknown input '" + name + "'");
    in_bit.push_back(*props.index_of(name));
  }
  for (const auto& name : string_list(doc, "outputs"))
    if (!props.is_output(name)) throw Error("interchange: unknown output '" + name + "'");

  MealyMachine m;
  m.props = props;
  m.states = string_list(doc, "states");
  if (m.states.empty()) throw Error("interchange: no states");
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t s = 0; s < m.states.size(); ++s)
    if (!index.emplace(m.states[s], s).second)
      throw Error("interchange: duplicate state '" + m.states[s] + "'");
  auto state = [&](const json& v) {
    if (!v.is_string()) throw Error("interchange: state names must be strings");
    auto it = index.find(v.get<std::string>());
    if (it == index.end()) throw Error("interchange: undeclared state " + v.dump());
    return it->second;
  };
  if (!doc.contains("initial")) throw Error("interchange: missing 'initial'");
  m.initial = state(doc.at("initial"));
  m.accepting.assign(m.states.size(), 0);
  if (doc.contains("accepting"))
    for (const auto& name : string_list(doc, "accepting")) m.accepting[state(name)] = 1;
  m.edges.resize(m.states.size());

  if (!doc.contains("transitions") || !doc.at("transitions").is_array())
    throw Error("interchange: 'transitions' must be an array");
  for (const auto& t : doc.at("transitions")) {
    for (const char* key : {"from", "input", "output", "to"})
      if (!t.contains(key)) throw Error(std::string("interchange: transition lacks '") + key + "'");
    MealyEdge e;
    const json& pat = t.at("input");
    if (!pat.is_string()) throw Error("interchange: input pattern must be a string");
    std::string p = pat.get<std::string>();
    if (p.size() != in_bit.size())
      throw Error("interchange: pattern '" + p + "' does not have one position per input");
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == '-') continue;
      if (p[k] != '0' && p[k] != '1')
        throw Error("interchange: bad pattern character in '" + p + "'");
      e.input.care |= bit(in_bit[k]);
      if (p[k] == '1') e.input.value |= bit(in_bit[k]);
    }
    for (const auto& name : t.at("output")) {
      if (!name.is_string() || !props.is_output(name.get<std::string>()))
        throw Error("interchange: bad output " + name.dump());
      e.output |= bit(*props.index_of(name.get<std::string>()));
    }
    e.target = state(t.at("to"));
    m.edges[state(t.at("from"))].push_back(e);
  }
  check_machine(m);
  return m;
}

}  // namespace

MealyMachine import_controller(std::string_view json_text, const PropTable& props) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("interchange: ") + e.what());
  }
  return read(doc, props);
}

MealyMachine import_controller(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("interchange: ") + e.what());
  }
  if (!doc.is_object()) throw Error("interchange: document must be an object");
  return read(doc, PropTable(string_list(doc, "inputs"), string_list(doc, "outputs")));
}

std::string export_controller(const MealyMachine& m) {
  const PropTable& props = m.props;
  json doc = json::object();
  doc["format"] = kFormat;
  doc["inputs"] = props.inputs();
  doc["outputs"] = props.outputs();
  doc["states"] = m.states;
  doc["initial"] = m.states.at(m.initial);
  json acc = json::array();
  for (std::uint32_t s = 0; s < m.states.size(); ++s)
    if (m.is_accepting(s)) acc.push_back(m.states[s]);
  doc["accepting"] = acc;
  json ts = json::array();
  for (std::uint32_t s = 0; s < m.states.size(); ++s) {
    for (const auto& e : m.edges[s]) {
      std::string pat;
      for (std::size_t k = 0; k < props.num_inputs(); ++k)
        pat += !(e.input.care & bit(k)) ? '-' : (e.input.value & bit(k)) ? '1' : '0';
      json t = json::object();
      t["from"] = m.states[s];
      t["input"] = pat;
      t["output"] = props.names_of(e.output);
      t["to"] = m.states[e.target];
      ts.push_back(t);
    }
  }
  doc["transitions"] = ts;
  return doc.dump(2) + "\n";
}

}  // namespace mtsyn
