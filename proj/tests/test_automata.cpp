#include <doctest.h>

#include "generators.hpp"
#include "mtsyn/automata.hpp"

using namespace mtsyn;

namespace {

std::vector<std::vector<Letter>> all_words(std::size_t nprops, std::size_t max_len) {
  std::vector<std::vector<Letter>> out{{}};
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer)
      for (Letter l = 0; l < (Letter{1} << nprops); ++l) {
        auto v = w;
        v.push_back(l);
        next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("atomic body accepts words starting with a") {
  Dfw d = build_dfw(parse_ltl("a"));
  REQUIRE(d.props == std::vector<std::string>{"a"});
  for (const auto& w : all_words(1, 3)) {
    bool expect = !w.empty() && (w[0] & 1);
    CHECK(d.accepts(w) == expect);
  }
}

TEST_CASE("a U b by brute force") {
  Dfw d = build_dfw(parse_ltl("a U b"));
  REQUIRE(d.props == std::vector<std::string>{"a", "b"});
  for (const auto& w : all_words(2, 5)) {
    bool expect = false;
    for (std::size_t l = 0; l < w.size() && !expect; ++l) {
      bool prefix_a = true;
      for (std::size_t k = 0; k < l; ++k) prefix_a = prefix_a && (w[k] & 1);
      expect = (w[l] & 2) && prefix_a;
    }
    CHECK(d.accepts(w) == expect);
  }
}

TEST_CASE("ff accepts nothing, X tt needs two letters") {
  Dfw ff = build_dfw(Formula::ff());
  for (const auto& w : all_words(0, 3)) CHECK_FALSE(ff.accepts(w));
  Dfw xtt = build_dfw(parse_ltl("X tt"));
  for (const auto& w : all_words(0, 4)) CHECK(xtt.accepts(w) == (w.size() >= 2));
}

TEST_CASE("only until states loop in the AWW") {
  Aww a = build_aww(normalize(parse_ltl("a U (b & X (c U a))")));
  for (std::uint32_t s = 0; s < a.states.size(); ++s) {
    bool self = false;
    for (Letter l = 0; l < a.num_letters(); ++l)
      for (const auto& cube : a.delta(s, l))
        for (auto t : cube) self = self || t == s;
    if (self) CHECK(a.states[s].op() == Formula::Op::until);
  }
  CHECK_THROWS_AS(build_aww(parse_ltl("G a")), Error);
}

TEST_CASE("NFW accepts by reaching the empty set") {
  Nfw n = aww_to_nfw(build_aww(normalize(parse_ltl("a & X b"))));
  REQUIRE(n.has_accepting);
  CHECK(n.states[n.accepting].empty());
}

TEST_CASE("DFW agrees with finite-window evaluation") {
  gen::Rng rng(41);
  const std::vector<std::string> names = {"a", "b", "c"};
  for (int k = 0; k < 60; ++k) {
    Formula f = normalize(gen::formula(rng, names, 3, true));
    Dfw d = build_dfw(f);
    PropTable table(d.props, {});
    for (const auto& w : all_words(d.props.size(), 3)) {
      bool expect = !w.empty() && eval_finite(f, table, w, 0, w.size() - 1);
      CHECK(d.accepts(w) == expect);
    }
  }
}

TEST_CASE("DFW is complete and the accepting state absorbs") {
  Dfw d = build_dfw(parse_ltl("F (a & X b)"));
  CHECK(d.table.size() == d.size() * d.num_letters());
  for (std::uint32_t s = 0; s < d.size(); ++s)
    for (Letter l = 0; l < d.num_letters(); ++l) {
      CHECK(d.step(s, l) < d.size());
      if (d.is_accepting(s)) CHECK(d.is_accepting(d.step(s, l)));
    }
}
