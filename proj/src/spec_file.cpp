#include "mtsyn/spec_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "expr_parser.hpp"
#include "lexer.hpp"

namespace mtsyn {

using detail::Lexer;
using detail::Tok;

namespace {

struct Line {
  std::string text;
  std::size_t number = 0;
  std::size_t column = 1;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  offset = b;
  return s.substr(b, e - b);
}

std::string strip_comment(std::string_view s) {
  auto hash = s.find('#');
  return std::string(hash == std::string_view::npos ? s : s.substr(0, hash));
}

std::vector<std::string> name_list(Lexer& lex) {
  std::vector<std::string> out;
  if (lex.at_end()) return out;
  out.push_back(lex.expect_ident());
  while (lex.accept(",")) out.push_back(lex.expect_ident());
  lex.expect_end();
  return out;
}

class SpecParser {
 public:
  SpecParser(std::string_view text, const ParamBindings& params) : params_(params) {
    std::size_t n = 1, start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      std::string_view raw = text.substr(start, nl == std::string_view::npos ? text.size() - start
                                                                             : nl - start);
      lines_.push_back({strip_comment(raw), n++, 1});
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
  }

  MttlSpec parse() {
    std::vector<std::string> inputs, outputs;
    std::optional<std::string> assume_text, body_text;
    SourceLoc assume_loc, body_loc;
    std::optional<TriggerKind> trigger;
    std::vector<Line> monitor_lines;
    bool have_inputs = false, have_outputs = false, have_monitor = false;

    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const Line& ln = lines_[i];
      std::size_t off = 0;
      std::string_view t = trim(ln.text, off);
      if (t.empty()) continue;
      SourceLoc at{ln.number, off + 1};
      auto colon = t.find(':');
      std::string key = std::string(t.substr(0, colon == std::string_view::npos ? t.size() : colon));
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();

      auto rest = [&](SourceLoc& loc) {
        std::size_t inner = 0;
        std::string_view r = trim(t.substr(colon + 1), inner);
        loc = {ln.number, off + colon + 2 + inner};
        return std::string(r);
      };
      auto once = [&](bool& seen) {
        if (seen) throw ParseError("duplicate '" + key + "' section", at);
        seen = true;
      };

      if (t.substr(0, 6) == "param " || t == "param") {
        parse_param(t, at);
      } else if (t.substr(0, 7) == "monitor") {
        once(have_monitor);
        Lexer head(t, at);
        head.expect_ident();
        head.expect("{");
        head.expect_end();
        bool closed = false;
        for (++i; i < lines_.size(); ++i) {
          std::size_t o = 0;
          std::string_view mt = trim(lines_[i].text, o);
          if (mt == "}") {
            closed = true;
            break;
          }
          if (!mt.empty()) monitor_lines.push_back({std::string(mt), lines_[i].number, o + 1});
        }
        if (!closed) throw ParseError("unterminated monitor block", at);
      } else if (colon == std::string_view::npos) {
        throw ParseError("expected a 'key: value' line", at);
      } else if (key == "inputs" || key == "outputs") {
        once(key == "inputs" ? have_inputs : have_outputs);
        SourceLoc loc;
        std::string r = rest(loc);
        Lexer lex(r, loc);
        (key == "inputs" ? inputs : outputs) = name_list(lex);
      } else if (key == "assume" || key == "body") {
        if ((key == "assume" ? assume_text : body_text))
          throw ParseError("duplicate '" + key + "' section", at);
        SourceLoc& loc = key == "assume" ? assume_loc : body_loc;
        (key == "assume" ? assume_text : body_text) = rest(loc);
      } else if (key == "trigger") {
        if (trigger) throw ParseError("duplicate 'trigger' section", at);
        SourceLoc loc;
        std::string r = rest(loc);
        if (r == "once") trigger = TriggerKind::once;
        else if (r == "repeat") trigger = TriggerKind::repeat;
        else throw ParseError("trigger must be 'once' or 'repeat'", loc);
      } else {
        throw ParseError("unknown section '" + key + "'", at);
      }
    }
    SourceLoc eof{lines_.empty() ? 1 : lines_.back().number, 1};
    if (!have_inputs) throw ParseError("missing 'inputs' section", eof);
    if (!have_outputs) throw ParseError("missing 'outputs' section", eof);
    if (!trigger) throw ParseError("missing 'trigger' section", eof);
    if (!body_text) throw ParseError("missing 'body' section", eof);
    if (!have_monitor) throw ParseError("missing 'monitor' block", eof);
    for (const auto& [name, value] : params_) {
      (void)value;
      if (!declared_params_.count(name)) throw Error("unknown parameter '" + name + "'");
    }

    MttlSpec spec;
    try {
      spec.props = PropTable(inputs, outputs);
    } catch (const Error& e) {
      throw ParseError(e.what(), {1, 1});
    }
    spec.trigger = *trigger;
    spec.assumption = assume_text ? parse_ltl(*assume_text, assume_loc) : Formula::tt();
    spec.body = parse_ltl(*body_text, body_loc);
    spec.monitor = parse_monitor(monitor_lines, inputs);
    return spec;
  }

 private:
  void parse_param(std::string_view t, SourceLoc at) {
    Lexer lex(t, at);
    lex.expect_ident();
    Token id = lex.peek();
    std::string name = lex.expect_ident();
    lex.expect("=");
    bool neg = lex.accept("-");
    if (lex.peek().kind != Tok::number)
      throw ParseError("parameter default must be an integer", lex.peek().loc);
    std::int64_t v = 0;
    try {
      v = std::stoll(lex.next().text);
    } catch (const std::exception&) {
      throw ParseError("integer out of range", id.loc);
    }
    lex.expect_end();
    if (!declared_params_.insert(name).second)
      throw ParseError("duplicate parameter '" + name + "'", id.loc);
    auto it = params_.find(name);
    VarDecl d{name, Kind::integer, it != params_.end() ? it->second : (neg ? -v : v), true};
    vars_.push_back(d);
  }

  Monitor parse_monitor(const std::vector<Line>& lines, const std::vector<std::string>& inputs) {
    Monitor m;
    m.inputs = inputs;
    m.vars = vars_;
    std::optional<StateId> initial, sink;
    std::vector<std::pair<Line, SourceLoc>> transitions;

    for (const auto& ln : lines) {
      SourceLoc at{ln.number, ln.column};
      Lexer lex(ln.text, at);
      if (lex.is_ident("var")) {
        lex.next();
        Token id = lex.peek();
        VarDecl d;
        d.name = lex.expect_ident();
        lex.expect(":");
        Token kind = lex.peek();
        std::string k = lex.expect_ident();
        if (k == "int") d.kind = Kind::integer;
        else if (k == "bool") d.kind = Kind::boolean;
        else throw ParseError("variable kind must be int or bool", kind.loc);
        lex.expect("=");
        Token val = lex.peek();
        if (d.kind == Kind::boolean) {
          std::string b = lex.expect_ident();
          if (b != "true" && b != "false")
            throw ParseError("boolean variable needs true or false", val.loc);
          d.initial = b == "true";
        } else {
          bool neg = lex.accept("-");
          if (lex.peek().kind != Tok::number)
            throw ParseError("integer variable needs an integer literal", lex.peek().loc);
          d.initial = std::stoll(lex.next().text) * (neg ? -1 : 1);
        }
        lex.expect_end();
        for (const auto& v : m.vars)
          if (v.name == d.name) throw ParseError("duplicate variable '" + d.name + "'", id.loc);
        m.vars.push_back(d);
      } else if (lex.is_ident("state")) {
        lex.next();
        Token id = lex.peek();
        std::string name = lex.expect_ident();
        if (m.state_index(name)) throw ParseError("duplicate state '" + name + "'", id.loc);
        StateId q = m.states.size();
        m.states.push_back(name);
        while (!lex.at_end()) {
          Token mark = lex.peek();
          std::string w = lex.expect_ident();
          if (w == "initial") {
            if (initial) throw ParseError("second initial state", mark.loc);
            initial = q;
          } else if (w == "sink") {
            if (sink) throw ParseError("second sink state", mark.loc);
            sink = q;
          } else if (w == "flag") {
            m.flagging.push_back(q);
          } else {
            throw ParseError("unknown state marker '" + w + "'", mark.loc);
          }
        }
      } else {
        transitions.push_back({ln, at});
      }
    }
    if (!initial) throw ParseError("monitor has no initial state", lines.empty() ? SourceLoc{1, 1} : SourceLoc{lines.front().number, lines.front().column});
    m.initial = *initial;
    if (!sink) {
      std::string name = "sink";
      for (int k = 1; m.state_index(name); ++k) name = "sink_" + std::to_string(k);
      sink = m.states.size();
      m.states.push_back(name);
    }
    m.sink = *sink;

    ExprScope scope{&m.vars, &m.inputs};
    for (const auto& [ln, at] : transitions) {
      Lexer lex(ln.text, at);
      auto state = [&]() {
        Token id = lex.peek();
        std::string name = lex.expect_ident();
        auto q = m.state_index(name);
        if (!q) throw ParseError("undeclared state '" + name + "'", id.loc);
        return *q;
      };
      MonitorTransition t;
      t.loc = lex.peek().loc;
      t.source = state();
      lex.expect("->");
      t.target = state();
      if (lex.accept("[")) {
        t.guard = detail::parse_expr(lex, scope);
        lex.expect("]");
      }
      if (lex.accept("/")) {
        lex.expect("{");
        t.action = detail::parse_action(lex, scope);
        lex.expect("}");
      }
      lex.expect_end();
      m.transitions.push_back(std::move(t));
    }
    return m;
  }

  using Token = detail::Token;

  const ParamBindings& params_;
  std::vector<Line> lines_;
  std::vector<VarDecl> vars_;
  std::set<std::string> declared_params_;
};

std::string joined(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

}  // namespace

MttlSpec parse_spec(std::string_view text, const ParamBindings& params) {
  return SpecParser(text, params).parse();
}

std::string format_spec(const MttlSpec& spec) {
  const Monitor& m = spec.monitor;
  std::ostringstream out;
  for (const auto& v : m.vars)
    if (v.parameter) out << "param " << v.name << " = " << v.initial << "\n";
  out << "inputs: " << joined(spec.props.inputs()) << "\n";
  out << "outputs: " << joined(spec.props.outputs()) << "\n";
  out << "assume: " << to_string(spec.assumption) << "\n";
  out << "trigger: " << trigger_name(spec.trigger) << "\n";
  out << "body: " << to_string(spec.body) << "\n";
  out << "monitor {\n";
  for (const auto& v : m.vars) {
    if (v.parameter) continue;
    out << "  var " << v.name << ": " << kind_name(v.kind) << " = "
        << format_value(Value{v.kind, v.initial}) << "\n";
  }
  for (StateId q = 0; q < m.states.size(); ++q) {
    out << "  state " << m.states[q];
    if (q == m.initial) out << " initial";
    if (m.is_flagging(q)) out << " flag";
    if (q == m.sink) out << " sink";
    out << "\n";
  }
  const ExprNames names = m.names();
  for (const auto& t : m.transitions) {
    out << "  " << m.states[t.source] << " -> " << m.states[t.target] << " ["
        << to_string(t.guard, names) << "]";
    if (!t.action.empty()) out << " / { " << to_string(t.action, names) << " }";
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

LassoTrace parse_trace(std::string_view json_text, const PropTable& props) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("trace: ") + e.what());
  }
  auto events = [&](const char* key) {
    std::vector<Letter> out;
    if (doc.is_object() && !doc.contains(key) && std::string_view(key) == "prefix") return out;
    if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_array())
      throw Error(std::string("trace: '") + key + "' must be an array of events");
    for (const auto& ev : doc.at(key)) {
      if (!ev.is_array()) throw Error("trace: each event is an array of proposition names");
      Letter l = 0;
      for (const auto& p : ev) {
        if (!p.is_string()) throw Error("trace: proposition names must be strings");
        auto idx = props.index_of(p.get<std::string>());
        if (!idx) throw Error("trace: undeclared proposition '" + p.get<std::string>() + "'");
        l |= bit(*idx);
      }
      out.push_back(l);
    }
    return out;
  };
  LassoTrace t{events("prefix"), events("loop")};
  if (t.loop.empty()) throw Error("trace: loop must not be empty");
  return t;
}

std::string format_trace(const LassoTrace& t, const PropTable& props) {
  using nlohmann::json;
  auto arr = [&](const std::vector<Letter>& ls) {
    json a = json::array();
    for (Letter l : ls) a.push_back(props.names_of(l));
    return a;
  };
  json doc;
  doc["prefix"] = arr(t.prefix);
  doc["loop"] = arr(t.loop);
  return doc.dump() + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace mtsyn
