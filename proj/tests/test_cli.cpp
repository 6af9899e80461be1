#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "mtsyn/cli.hpp"
#include "mtsyn/dot.hpp"
#include "mtsyn/monitor.hpp"
#include "mtsyn/spec_file.hpp"

using namespace mtsyn;
using namespace mtsyn::cli;

namespace {

std::string spec_path(const char* name) { return std::string(MTSYN_SPEC_DIR "/") + name; }

struct Capture {
  std::istringstream in;
  std::ostringstream out, err;
  Streams io() { return {in, out, err}; }
};

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "mtsyn_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("parse_param") {
  CHECK(parse_param("n=2") == std::pair<std::string, std::int64_t>{"n", 2});
  CHECK(parse_param("k=-3").second == -3);
  CHECK_THROWS_AS(parse_param("n"), Error);
  CHECK_THROWS_AS(parse_param("n=two"), Error);
  CHECK_THROWS_AS(parse_param("=2"), Error);
}

TEST_CASE("check") {
  Capture c;
  CHECK(cmd_check(spec_path("knock.spec"), {}, c.io()) == kOk);
  CHECK(c.out.str().rfind("ok: trigger repeat, body co-safety", 0) == 0);
  Capture missing;
  CHECK(cmd_check("/no/such.spec", {}, missing.io()) == kIo);
  Capture bad;
  auto p = scratch("bad.spec");
  write_file(p.string(), "inputs: a\noutputs: c\ntrigger: sometimes\n");
  CHECK(cmd_check(p.string(), {}, bad.io()) == kInvalid);
  CHECK(bad.err.str().find(":3:") != std::string::npos);
  Capture unknown;
  CHECK(cmd_check(spec_path("knock.spec"), {{"zz", 1}}, unknown.io()) == kInvalid);
}

TEST_CASE("synthesize, simulate and verify the knock spec") {
  auto ctrl = scratch("knock.json");
  auto dot = scratch("knock.dot");
  SynthesizeOptions opt;
  opt.out = ctrl.string();
  opt.dot = dot.string();
  Capture s;
  REQUIRE(cmd_synthesize(spec_path("knock.spec"), {}, opt, s.io()) == kOk);
  CHECK(read_file(dot.string()).find("style=dashed") != std::string::npos);

  Capture sim;
  sim.in.str("knock\nknock\n\nknock\nbogus\nquit\nknock\n");
  CHECK(cmd_simulate(ctrl.string(), sim.io()) == kOk);
  const std::string expected =
      "at monitor:q0 {n=2, counter=1}\n"
      "step 0: in {knock} out {} -> monitor:q0 {n=2, counter=2}\n"
      "step 1: in {knock} out {open} [flag: controller takes over] -> controller:";
  CHECK(sim.out.str().rfind(expected, 0) == 0);
  CHECK(sim.out.str().find("out {greet}") != std::string::npos);
  CHECK(sim.out.str().find("out {close} [reset: monitor restarts] -> monitor:q0 {n=2, counter=1}") !=
        std::string::npos);
  CHECK(sim.out.str().find("unknown input proposition 'bogus'") != std::string::npos);
  CHECK(count(sim.out.str(), "step ") == 4);

  Capture v;
  VerifyCliOptions vo;
  vo.episodes = 200;
  CHECK(cmd_verify(spec_path("knock.spec"), ctrl.string(), {}, vo, v.io()) == kOk);
  CHECK(v.out.str() == "episodes 200: sat 200 (vacuous 0), unsat 0, unknown 0\n");

  // Checked against n = 3, the n = 2 controller opens one knock too early.
  Capture v3;
  CHECK(cmd_verify(spec_path("knock.spec"), ctrl.string(), {{"n", 3}}, vo, v3.io()) ==
        kInvalid);
  CHECK(v3.out.str().find("counterexample:") != std::string::npos);
}

TEST_CASE("synthesis output is deterministic") {
  Capture a, b;
  SynthesizeOptions opt;
  REQUIRE(cmd_synthesize(spec_path("room.spec"), {}, opt, a.io()) == kOk);
  REQUIRE(cmd_synthesize(spec_path("room.spec"), {}, opt, b.io()) == kOk);
  CHECK(a.out.str() == b.out.str());
  CHECK(!a.out.str().empty());
}

TEST_CASE("unrealisable reduction exits 2 with the caveat") {
  Capture c;
  CHECK(cmd_synthesize(spec_path("incompleteness.spec"), {}, {}, c.io()) == kUnrealisable);
  CHECK(c.err.str().find("unrealisable") != std::string::npos);
  CHECK(c.err.str().find("sound but not complete") != std::string::npos);
  CHECK(c.out.str().empty());
}

TEST_CASE("external backends") {
  Capture missing_cmd;
  SynthesizeOptions opt;
  opt.backend = "external:/no/such/tool";
  CHECK(cmd_synthesize(spec_path("knock.spec"), {}, opt, missing_cmd.io()) == kIo);

  // A prepared interchange file for the two-bus case.
  Capture two;
  opt.backend = "external:" + spec_path("two_bus_12_12_always_acc.json");
  opt.out = scratch("two_bus.json").string();
  CHECK(cmd_synthesize(spec_path("two_bus_12_12.spec"), {}, opt, two.io()) == kOk);
  Capture v;
  VerifyCliOptions vo;
  vo.episodes = 100;
  CHECK(cmd_verify(spec_path("two_bus_12_12.spec"), *opt.out, {}, vo, v.io()) == kOk);
}

TEST_CASE("eval-trace") {
  auto t = scratch("knock_trace.json");
  write_file(t.string(),
             R"({"prefix": [["knock"], ["knock", "open"], ["greet"], ["close"]], "loop": [[]]})");
  Capture c;
  CHECK(cmd_eval_trace(spec_path("knock.spec"), t.string(), 1000, {}, c.io()) == kOk);
  CHECK(c.out.str() == "sat: monitor never flags again\nflags: 1\nwindows: [1,3]\n");
  write_file(t.string(), R"({"prefix": [["knock"], ["knock"]], "loop": [[]]})");
  Capture u;
  CHECK(cmd_eval_trace(spec_path("knock.spec"), t.string(), 1000, {}, u.io()) == kOk);
  CHECK(u.out.str().rfind("unsat", 0) == 0);
}

TEST_CASE("export") {
  auto star = scratch("star.spec");
  write_file(star.string(),
             "inputs: a\noutputs: c\ntrigger: once\nbody: c\n"
             "monitor {\n  state q0 initial\n  state qF flag\n  q0 -> qF [true]\n}\n");
  Capture c;
  CHECK(cmd_export(star.string(), "dot", std::nullopt, {}, c.io()) == kOk);
  const std::string dot = c.out.str();
  CHECK(count(dot, "[shape=") == 4);  // start point plus three states
  CHECK(count(dot, "label=") == 1);
  CHECK(dot == monitor_dot(star_monitor({"a"})));

  Capture m;
  CHECK(cmd_export(spec_path("two_bus_12_12_always_acc.json"), "interchange", std::nullopt, {},
                   m.io()) == kOk);
  CHECK(m.out.str().find("mtsyn-mealy/1") != std::string::npos);
  Capture bad;
  CHECK(cmd_export(star.string(), "svg", std::nullopt, {}, bad.io()) == kInvalid);
  Capture io;
  CHECK(cmd_export(star.string(), "dot", scratch("none/x.dot").string() + "/y", {}, io.io()) ==
        kIo);
}

TEST_CASE("generate two-bus") {
  auto dir = scratch("gen");
  std::filesystem::create_directories(dir);
  Capture c;
  CHECK(cmd_generate_two_bus(3, 2, dir.string(), c.io()) == kOk);
  MttlSpec s = parse_spec(read_file((dir / "two_bus_3_2.spec").string()));
  CHECK(s.props.num_inputs() == 5);
  CHECK(std::filesystem::exists(dir / "two_bus_3_2_always_acc.json"));
  Capture bad;
  CHECK(cmd_generate_two_bus(0, 2, dir.string(), bad.io()) == kInvalid);
}
