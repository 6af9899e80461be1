#include <doctest.h>

#include "generators.hpp"
#include "mtsyn/mttl.hpp"
#include "mtsyn/spec_file.hpp"

using namespace mtsyn;

namespace {

MttlSpec load(const char* name, const ParamBindings& p = {}) {
  return parse_spec(read_file(std::string(MTSYN_SPEC_DIR "/") + name), p);
}

MttlSpec tiny(const char* assume, const char* body, TriggerKind k) {
  MttlSpec s;
  s.props = PropTable({"a"}, {"c"});
  s.assumption = parse_ltl(assume);
  s.body = parse_ltl(body);
  s.trigger = k;
  s.monitor = star_monitor({"a"});
  return s;
}

bool has(const std::vector<Diagnostic>& ds, const std::string& text) {
  for (const auto& d : ds)
    if (d.message.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("check_spec") {
  CHECK(check_spec(load("knock.spec")).empty());
  CHECK(check_spec(load("room.spec")).empty());
  MttlSpec bad = tiny("tt", "G a", TriggerKind::repeat);
  CHECK(has(check_spec(bad), "body not co-safety"));
  bad = tiny("G F (a & X c)", "a", TriggerKind::once);
  CHECK(has(check_spec(bad), "assumption outside gamma fragment"));
  bad = tiny("tt", "a & zz", TriggerKind::once);
  CHECK(!check_spec(bad).empty());
  MttlSpec simple_general = tiny("tt", "G F c", TriggerKind::once);
  CHECK(check_spec(simple_general).empty());
}

TEST_CASE("t(pi) is assumption -> body") {
  MttlSpec s = tiny("G F a", "c", TriggerKind::once);
  CHECK(t_of(s) == Formula::implies(parse_ltl("G F a"), parse_ltl("c")));
}

TEST_CASE("violated assumption gives sat") {
  for (auto k : {TriggerKind::once, TriggerKind::repeat}) {
    MttlSpec s = tiny("G F a", "c", k);
    Verdict v = oracle(s, LassoTrace{{1}, {0}}, 100);
    CHECK(v.tag == Verdict::Tag::sat);
    CHECK(v.reason == "assumption violated");
  }
}

TEST_CASE("tt assumption defers to the trigger oracle") {
  gen::Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    MttlSpec s = tiny("tt", "c | X c", gen::coin(rng) ? TriggerKind::once : TriggerKind::repeat);
    LassoTrace t = gen::lasso(rng, 2, 3, 3);
    Verdict a = oracle(s, t, 1000);
    Verdict b = s.trigger == TriggerKind::once
                    ? oracle_simple(s.monitor, s.body, s.props, t, 1000)
                    : oracle_repeat(s.monitor, s.body, s.props, t, 1000);
    CHECK(a.tag == b.tag);
  }
}

TEST_CASE("room spec on an assumption-violating lasso") {
  MttlSpec s = load("room.spec");
  const PropTable& p = s.props;
  auto L = [&](std::initializer_list<const char*> names) {
    Letter l = 0;
    for (auto n : names) l |= bit(*p.index_of(n));
    return l;
  };
  // Room used twice, empty twice, flag; the robot locks itself in and
  // cleans but the room never becomes clean, and the robot never leaves.
  LassoTrace t{{L({"inUse"}), L({"inUse"}), L({"inUse"}), L({}), L({}), L({})},
               {L({"inRoom", "doorLocked", "cleaning"})}};
  CHECK_FALSE(eval_lasso(s.assumption, p, t));
  CHECK(oracle(s, t, 1000).tag == Verdict::Tag::sat);
  // Same run respecting the assumption but without cleaning: unsat.
  LassoTrace u{t.prefix, {L({"inRoom", "doorLocked"})}};
  CHECK(eval_lasso(s.assumption, p, u));
  CHECK(oracle(s, u, 1000).tag == Verdict::Tag::unsat);
}

TEST_CASE("star monitor once equals the body") {
  gen::Rng rng(17);
  const std::vector<std::string> names = {"a", "c"};
  const PropTable props({"a"}, {"c"});
  Monitor star = star_monitor({"a"});
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::formula(rng, names, 3);
    LassoTrace t = gen::lasso(rng, 2, 8, 4);
    Verdict v = oracle_simple(star, f, props, t, 1000);
    REQUIRE(v.tag != Verdict::Tag::unknown);
    CHECK((v.tag == Verdict::Tag::sat) == eval_lasso(f, props, t));
    CHECK(v.flags == std::vector<std::size_t>{0});
  }
}

TEST_CASE("a repeat window is unique") {
  gen::Rng rng(23);
  const std::vector<std::string> names = {"a", "c"};
  const PropTable props({"a"}, {"c"});
  for (int i = 0; i < 300; ++i) {
    Formula f = normalize(gen::formula(rng, names, 3, true));
    auto w = gen::letters(rng, 1 + gen::below(rng, 8), 2);
    int tight = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      std::vector<Letter> pre(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k + 1));
      if (tight_sat(f, props, pre)) ++tight;
    }
    CHECK(tight <= 1);
  }
}

TEST_CASE("simple triggers start the body at the flag position") {
  MttlSpec s = load("knock.spec");
  s.trigger = TriggerKind::once;
  // Flag on the second knock (position 2); open must hold right there.
  const Letter knock = 1, open = 2, greet = 4, close = 8;
  LassoTrace good{{knock, 0, knock | open, greet, close}, {0}};
  Verdict v = oracle(s, good, 1000);
  CHECK(v.tag == Verdict::Tag::sat);
  CHECK(v.flags == std::vector<std::size_t>{2});
  LassoTrace late{{knock, 0, knock, open, greet, close}, {0}};
  CHECK(oracle(s, late, 1000).tag == Verdict::Tag::unsat);
}

TEST_CASE("parity: p at even positions") {
  MttlSpec s = load("parity.spec");
  const Letter p = 2;
  LassoTrace even{{}, {p, 0}};
  Verdict v = oracle(s, even, 1000);
  CHECK(v.tag == Verdict::Tag::sat);
  CHECK(v.windows.front() == std::make_pair<std::size_t, std::size_t>(0, 1));
  LassoTrace odd{{0}, {p}};
  CHECK(oracle(s, odd, 1000).tag == Verdict::Tag::unsat);
  LassoTrace all{{}, {p}};
  CHECK(oracle(s, all, 1000).tag == Verdict::Tag::sat);
  LassoTrace late{{p, 0, p, 1, 1}, {p, 1}};  // breaks at position 4
  CHECK(oracle(s, late, 1000).tag == Verdict::Tag::unsat);
}

TEST_CASE("repeat restarts from the initial valuation") {
  MttlSpec s = load("knock.spec");
  const Letter knock = 1, open = 2, greet = 4, close = 8;
  // Two knocks then the visit, forever.
  LassoTrace t{{}, {knock, knock | open, greet, close}};
  Verdict v = oracle(s, t, 1000);
  CHECK(v.tag == Verdict::Tag::sat);
  CHECK(v.flags.front() == 1);
  // Skipping the greeting in the second round is caught.
  LassoTrace bad{{knock, knock | open, greet, close, knock, knock | open, 0, close}, {0}};
  CHECK(oracle(s, bad, 1000).tag == Verdict::Tag::unsat);
}

TEST_CASE("variable-free monitors never give unknown") {
  gen::Rng rng(29);
  const PropTable props({"a", "b"}, {"c"});
  const std::vector<std::string> names = {"a", "b", "c"};
  int checked = 0;
  while (checked < 200) {
    Monitor m = gen::monitor(rng, {"a", "b"});
    if (!m.vars.empty()) continue;
    ++checked;
    Formula f = normalize(gen::formula(rng, names, 2, true));
    LassoTrace t = gen::lasso(rng, 3, 6, 4);
    CHECK(oracle_simple(m, f, props, t, t.size()).tag != Verdict::Tag::unknown);
    CHECK(oracle_repeat(m, f, props, t, t.size()).tag != Verdict::Tag::unknown);
  }
}
