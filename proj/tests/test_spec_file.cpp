#include <doctest.h>

#include "mtsyn/spec_file.hpp"

using namespace mtsyn;

namespace {

std::string spec_path(const char* name) { return std::string(MTSYN_SPEC_DIR "/") + name; }

SourceLoc error_at(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.loc();
  }
  FAIL("no parse error for: " << text);
  return {};
}

const char* kMinimal =
    "inputs: a\n"
    "outputs: c\n"
    "trigger: once\n"
    "body: c\n"
    "monitor {\n"
    "  state q0 initial\n"
    "  state qF flag\n"
    "  q0 -> qF [in(a)]\n"
    "}\n";

}  // namespace

TEST_CASE("bundled specs survive a format/parse round trip") {
  for (const char* name : {"knock.spec", "room.spec", "parity.spec", "averaging.spec",
                           "incompleteness.spec", "two_bus_12_12.spec"}) {
    INFO(name);
    MttlSpec s = parse_spec(read_file(spec_path(name)));
    std::string text = format_spec(s);
    MttlSpec back = parse_spec(text);
    CHECK(back == s);
    CHECK(format_spec(back) == text);
  }
}

TEST_CASE("minimal spec") {
  MttlSpec s = parse_spec(kMinimal);
  CHECK(s.trigger == TriggerKind::once);
  CHECK(s.assumption == Formula::tt());
  CHECK(s.monitor.states.size() == 3);  // q0, qF and the implicit sink
  CHECK(s.monitor.states[s.monitor.sink] == "sink");
  CHECK(s.monitor.transitions.size() == 1);
  CHECK(s.monitor.transitions[0].loc.line == 8);
}

TEST_CASE("parse errors carry line and column") {
  std::string t = kMinimal;
  SourceLoc l = error_at("inputs: a\noutputs: c\ntrigger: twice\nbody: c\n");
  CHECK(l.line == 3);
  CHECK(l.column == 10);
  l = error_at("inputs: a\noutputs: c\ntrigger: once\nbody: c U\nmonitor {\n}\n");
  CHECK(l.line == 4);
  l = error_at(t.replace(t.find("in(a)"), 5, "in(zz)"));
  CHECK(l.line == 8);
  l = error_at("inputs: a\noutputs: c\nfoo: 1\n");
  CHECK(l.line == 3);
  CHECK(l.column == 1);
  std::string unterminated = kMinimal;
  unterminated.resize(unterminated.size() - 2);
  CHECK(error_at(unterminated).line > 0);
}

TEST_CASE("parameters") {
  std::string text = read_file(spec_path("knock.spec"));
  MttlSpec s = parse_spec(text);
  REQUIRE(!s.monitor.vars.empty());
  CHECK(s.monitor.vars[0].name == "n");
  CHECK(s.monitor.vars[0].parameter);
  CHECK(s.monitor.vars[0].initial == 2);
  MttlSpec five = parse_spec(text, {{"n", 5}});
  CHECK(five.monitor.vars[0].initial == 5);
  CHECK_THROWS_WITH_AS(parse_spec(text, {{"k", 1}}), doctest::Contains("unknown parameter"),
                       Error);
  // Assigning a parameter parses but does not check.
  std::string t = text;
  t.replace(t.find("counter := counter + 1"), 22, "n := 3");
  auto diags = check_spec(parse_spec(t));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("cannot be assigned") != std::string::npos);
}

TEST_CASE("trace documents") {
  PropTable p({"a", "b"}, {"c"});
  LassoTrace t = parse_trace(R"({"prefix": [["a"], []], "loop": [["b", "c"]]})", p);
  CHECK(t.prefix == std::vector<Letter>{1, 0});
  CHECK(t.loop == std::vector<Letter>{6});
  CHECK(parse_trace(format_trace(t, p), p).loop == t.loop);
  CHECK_THROWS_AS(parse_trace(R"({"prefix": [], "loop": []})", p), Error);
  CHECK_THROWS_AS(parse_trace(R"({"prefix": [], "loop": [["zz"]]})", p), Error);
  CHECK(parse_trace(R"({"loop": [[]]})", p).prefix.empty());
}

TEST_CASE("missing files raise IoError") {
  CHECK_THROWS_AS(read_file("/no/such/file.spec"), IoError);
  CHECK_THROWS_AS(write_file("/no/such/dir/out.txt", "x"), IoError);
}
