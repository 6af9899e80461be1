#include <doctest.h>

#include "generators.hpp"
#include "mtsyn/compose.hpp"
#include "mtsyn/game.hpp"
#include "mtsyn/spec_file.hpp"
#include "mtsyn/synth.hpp"

using namespace mtsyn;

namespace {

MttlSpec load(const char* name, const ParamBindings& p = {}) {
  return parse_spec(read_file(std::string(MTSYN_SPEC_DIR "/") + name), p);
}

SymbolicController build(const MttlSpec& s) {
  SynthesisResult r = synthesize(s, Backend{});
  REQUIRE(r.controller);
  return *r.controller;
}

Letter letter(const PropTable& p, std::initializer_list<const char*> names) {
  Letter l = 0;
  for (auto n : names) l |= bit(*p.index_of(n));
  return l;
}

}  // namespace

TEST_CASE("knock controller opens, greets and closes, then restarts") {
  MttlSpec s = load("knock.spec");
  SymbolicController sc = build(s);
  const PropTable& p = sc.props;
  Letter knock = letter(p, {"knock"});
  ControllerState st = initial_state(sc);
  ControllerState start = st;

  auto o = controller_step(sc, st, knock);
  CHECK(o.outputs == 0);
  CHECK(o.next.loc.in_monitor());
  o = controller_step(sc, o.next, knock);
  CHECK(o.outputs == letter(p, {"open"}));
  REQUIRE(o.transition);
  CHECK(sc.transitions[*o.transition].rule == Rule::fused);
  CHECK_FALSE(o.next.loc.in_monitor());
  o = controller_step(sc, o.next, 0);
  CHECK(o.outputs == letter(p, {"greet"}));
  o = controller_step(sc, o.next, knock);
  CHECK(o.outputs == letter(p, {"close"}));
  CHECK(sc.transitions[*o.transition].rule == Rule::reset);
  CHECK(o.next == start);
}

TEST_CASE("stutter and sink are silent") {
  MttlSpec s = load("room.spec");
  SymbolicController sc = build(s);
  ControllerState st = initial_state(sc);
  // q0 with no inUse has no enabled guard.
  auto o = controller_step(sc, st, 0);
  CHECK(o.outputs == 0);
  CHECK_FALSE(o.transition);
  CHECK(o.next == st);

  ControllerState sink{Location{Location::Part::monitor, sc.monitor_sink}, st.val};
  for (Letter l = 0; l < 4; ++l) {
    auto k = controller_step(sc, sink, l);
    CHECK(k.next == sink);
    CHECK(k.outputs == 0);
  }
}

TEST_CASE("a monitor that never flags never drives outputs") {
  MttlSpec s = load("knock.spec");
  // Remove the flagging move; the monitor now only counts.
  s.monitor.transitions.pop_back();
  s.monitor.transitions[0].guard = parse_expr("in(knock)", {&s.monitor.vars, &s.monitor.inputs});
  SynthesisResult r = synthesize(s, Backend{});
  REQUIRE(r.controller);
  gen::Rng rng(8);
  for (int e = 0; e < 50; ++e) {
    ControllerState st = initial_state(*r.controller);
    for (Letter l : gen::letters(rng, 30, 1)) {
      auto o = controller_step(*r.controller, st, l);
      CHECK(o.outputs == 0);
      st = o.next;
    }
  }
}

TEST_CASE("star monitor composition replays the realizer") {
  PropTable p({"a", "b"}, {"c"});
  Monitor star = star_monitor({"a", "b"});
  auto m = solve_reachability(build_dfw(normalize(parse_ltl("c & X (a -> c) & X X tt"))),
                              Formula::tt(), p);
  REQUIRE(m);
  MealyMachine plain = without_accepting(*m);
  SymbolicController sc = compose(star, plain, ComposeMode::simple);
  gen::Rng rng(3);
  for (int e = 0; e < 100; ++e) {
    ControllerState st = initial_state(sc);
    std::uint32_t cs = plain.initial;
    for (Letter l : gen::letters(rng, 10, 2)) {
      auto o = controller_step(sc, st, l);
      auto mv = plain.step(cs, l);
      CHECK(o.outputs == mv.output);
      st = o.next;
      cs = mv.target;
    }
  }
}

TEST_CASE("compose rejects mismatched machines") {
  MttlSpec s = load("knock.spec");
  MealyMachine c;
  c.props = PropTable({"other"}, {"open"});
  c.states = {"s"};
  c.accepting = {1};
  c.edges = {{{InputCube{}, 0, 0}}};
  CHECK_THROWS_AS(compose(s.monitor, c, ComposeMode::repeating), Error);
  c.props = PropTable({"knock"}, {"open"});
  CHECK_THROWS_AS(compose(s.monitor, c, ComposeMode::simple), Error);
  c.accepting = {0};
  CHECK_THROWS_AS(compose(s.monitor, c, ComposeMode::repeating), Error);
}

TEST_CASE("monitor locations emit nothing on random monitors") {
  gen::Rng rng(77);
  PropTable p({"a", "b"}, {"c"});
  MealyMachine c;
  c.props = p;
  c.states = {"s"};
  c.accepting = {0};
  c.edges = {{{InputCube{}, 4, 0}}};
  for (int k = 0; k < 60; ++k) {
    Monitor m = gen::monitor(rng, {"a", "b"});
    SymbolicController sc = compose(m, c, ComposeMode::simple);
    for (const auto& t : sc.transitions)
      if (t.rule == Rule::monitor) CHECK(t.outputs == 0);
    for (int e = 0; e < 10; ++e) {
      ControllerState st = initial_state(sc);
      Configuration mc = initial_configuration(m);
      bool flagged = false;
      for (Letter l : gen::letters(rng, 12, 2)) {
        ControllerStep o;
        try {
          o = controller_step(sc, st, l);
        } catch (const EvalError&) {
          break;
        }
        if (!flagged) {
          mc = step(m, mc, l);
          flagged = m.is_flagging(mc.state);
          CHECK(o.outputs == (flagged ? Letter{4} : Letter{0}));
          if (!flagged) CHECK(o.next.val == mc.val);
        } else {
          CHECK(o.outputs == 4);
        }
        st = o.next;
      }
    }
  }
}

TEST_CASE("controller files round trip") {
  for (const char* name : {"knock.spec", "room.spec", "parity.spec", "averaging.spec"}) {
    SymbolicController sc = build(load(name));
    std::string text = serialize_controller(sc);
    SymbolicController back = load_controller(text);
    CHECK(back == sc);
    CHECK(serialize_controller(back) == text);
  }
  CHECK_THROWS_AS(load_controller("{}"), Error);
}

TEST_CASE("verification of the bundled case studies") {
  VerifyOptions opt;
  opt.episodes = 300;
  for (const char* name : {"knock.spec", "room.spec", "parity.spec", "averaging.spec"}) {
    MttlSpec s = load(name);
    VerifyReport r = verify_against_oracle(s, build(s), opt);
    INFO(name);
    CHECK(r.unsat == 0);
    CHECK(r.unknown == 0);
    CHECK(r.sat == opt.episodes);
  }
}

TEST_CASE("parity controller raises p exactly at even positions") {
  MttlSpec s = load("parity.spec");
  SymbolicController sc = build(s);
  gen::Rng rng(12);
  Letter p = letter(sc.props, {"p"});
  for (int e = 0; e < 50; ++e) {
    ControllerState st = initial_state(sc);
    auto in = gen::letters(rng, 40, 1);
    for (std::size_t i = 0; i < in.size(); ++i) {
      auto o = controller_step(sc, st, in[i]);
      CHECK(((o.outputs & p) != 0) == (i % 2 == 0));
      st = o.next;
    }
  }
}

TEST_CASE("dropping an output is caught") {
  for (const char* name : {"knock.spec", "parity.spec", "room.spec"}) {
    MttlSpec s = load(name);
    SymbolicController sc = build(s);
    std::size_t mutants = 0;
    for (std::size_t i = 0; i < sc.transitions.size(); ++i) {
      if (sc.transitions[i].outputs == 0) continue;
      SymbolicController bad = sc;
      bad.transitions[i].outputs = 0;
      VerifyOptions opt;
      opt.episodes = 1000;
      VerifyReport r = verify_against_oracle(s, bad, opt);
      INFO(name << " transition " << i);
      CHECK(r.unsat > 0);
      CHECK(r.counterexample);
      ++mutants;
    }
    CHECK(mutants > 0);
  }
}

TEST_CASE("incompleteness example") {
  MttlSpec s = load("incompleteness.spec");
  SynthesisResult r = synthesize(s, Backend{});
  CHECK_FALSE(r.machine);
  CHECK_FALSE(r.controller);
  CHECK_FALSE(r.trivial);
  // A controller that answers the flagging event with c is still correct:
  // the body's first letter is always the flagging one, which has a and not b.
  MealyMachine always_c;
  always_c.props = s.props;
  always_c.states = {"s"};
  always_c.accepting = {0};
  always_c.edges = {{{InputCube{}, letter(s.props, {"c"}), 0}}};
  SymbolicController sc = compose(s.monitor, always_c, ComposeMode::simple);
  VerifyOptions opt;
  opt.episodes = 300;
  CHECK(verify_against_oracle(s, sc, opt).unsat == 0);
}
