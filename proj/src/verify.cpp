#include <map>
#include <random>

#include "mtsyn/compose.hpp"

namespace mtsyn {

namespace {

struct Normalized {
  Location loc;
  Valuation val;

  bool operator==(const Normalized&) const = default;
};

// Controller locations hold the valuation constant and never read it.
Normalized normalize_state(const ControllerState& s) {
  if (s.loc.in_monitor()) return {s.loc, s.val};
  return {s.loc, {}};
}

class InputSampler {
 public:
  InputSampler(const MttlSpec& spec, const VerifyOptions& opt, std::uint64_t seed)
      : props_(spec.props), period_(std::max<std::size_t>(1, opt.recurrence_period)), rng_(seed) {
    GammaParts parts = split_gamma(spec.assumption);
    invariants_ = std::move(parts.invariants);
    recurrences_ = std::move(parts.recurrences);
  }

  /// Picks an input for `state`, preferring ones that keep the assumption.
  Letter pick(const SymbolicController& sc, const ControllerState& state,
              std::optional<Letter> prev, std::size_t step) {
    const bool want_recurrence = !recurrences_.empty() && step % period_ == period_ - 1;
    const std::size_t rec = want_recurrence ? (step / period_) % recurrences_.size() : 0;
    Letter fallback = draw();
    bool have_fallback = false;
    for (int attempt = 0; attempt < 64; ++attempt) {
      Letter in = draw();
      Letter letter = in | controller_step(sc, state, in).outputs;
      if (!invariants_ok(prev, letter)) continue;
      if (!want_recurrence || holds(recurrences_[rec], letter, std::nullopt)) return in;
      if (!have_fallback) {
        fallback = in;
        have_fallback = true;
      }
    }
    return fallback;
  }

 private:
  Letter draw() { return rng_() & props_.input_mask(); }

  bool holds(const Formula& f, Letter cur, std::optional<Letter> next) const {
    std::vector<Letter> w{cur};
    if (next) w.push_back(*next);
    return eval_finite(f, props_, w, 0, w.size() - 1);
  }

  bool invariants_ok(std::optional<Letter> prev, Letter cur) const {
    for (const auto& b : invariants_) {
      // A lookahead invariant at the previous position is settled now; a
      // plain one can be checked on the current letter alone.
      if (prev && !holds(b, *prev, cur)) return false;
      if (!has_next(b) && !holds(b, cur, std::nullopt)) return false;
    }
    return true;
  }

  static bool has_next(const Formula& f) {
    for (const auto& g : subformulas(f))
      if (g.op() == Formula::Op::next) return true;
    return false;
  }

  const PropTable& props_;
  std::size_t period_;
  std::mt19937_64 rng_;
  std::vector<Formula> invariants_;
  std::vector<Formula> recurrences_;
};

}  // namespace

VerifyReport verify_against_oracle(const MttlSpec& spec, const SymbolicController& sc,
                                   const VerifyOptions& opt, bool keep_traces) {
  if (!(spec.props == sc.props)) throw Error("verify: controller alphabet differs from the spec");
  VerifyReport report;
  const std::size_t cap = std::max<std::size_t>(opt.horizon, 1) * 8;
  std::seed_seq seq{opt.seed};
  std::mt19937_64 seeder(seq);
  for (std::size_t ep = 0; ep < opt.episodes; ++ep) {
    InputSampler sampler(spec, opt, seeder());
    std::vector<Normalized> seen;
    std::vector<Letter> word;
    ControllerState s = initial_state(sc);
    seen.push_back(normalize_state(s));
    std::optional<std::pair<std::size_t, std::size_t>> cycle;  // [i, j)
    while (word.size() < cap) {
      std::optional<Letter> prev;
      if (!word.empty()) prev = word.back();
      Letter in = sampler.pick(sc, s, prev, word.size());
      ControllerStep st = controller_step(sc, s, in);
      word.push_back(in | st.outputs);
      s = st.next;
      seen.push_back(normalize_state(s));
      // Remember the latest repeated state, at its earliest occurrence.
      const std::size_t j = seen.size() - 1;
      for (std::size_t i = 0; i < j; ++i)
        if (seen[i] == seen[j]) {
          cycle = {i, j};
          break;
        }
      if (word.size() < opt.horizon) continue;
      if (cycle) break;
    }
    ++report.episodes;
    if (!cycle) {
      ++report.unknown;
      continue;
    }
    LassoTrace t;
    t.prefix.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(cycle->first));
    t.loop.assign(word.begin() + static_cast<std::ptrdiff_t>(cycle->first),
                  word.begin() + static_cast<std::ptrdiff_t>(cycle->second));
    std::size_t bound = opt.oracle_bound ? opt.oracle_bound : 100 * t.size() + 1000;
    Verdict v = oracle(spec, t, bound);
    switch (v.tag) {
      case Verdict::Tag::sat:
        ++report.sat;
        if (!eval_lasso(spec.assumption, spec.props, t)) ++report.vacuous;
        break;
      case Verdict::Tag::unknown:
        ++report.unknown;
        break;
      case Verdict::Tag::unsat:
        ++report.unsat;
        if (!report.counterexample) {
          report.counterexample = t;
          report.counterexample_verdict = v;
        }
        break;
    }
    if (keep_traces) report.traces.push_back(std::move(t));
  }
  return report;
}

}  // namespace mtsyn
