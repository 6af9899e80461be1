#include "mtsyn/mttl.hpp"

#include <set>

namespace mtsyn {

std::string_view trigger_name(TriggerKind k) {
  return k == TriggerKind::once ? "once" : "repeat";
}

std::string_view Verdict::tag_name(Tag t) {
  switch (t) {
    case Tag::sat: return "sat";
    case Tag::unsat: return "unsat";
    case Tag::unknown: return "unknown";
  }
  return "unknown";
}

std::vector<Diagnostic> check_spec(const MttlSpec& spec) {
  std::vector<Diagnostic> out = validate(spec.monitor);
  if (spec.monitor.inputs != spec.props.inputs())
    out.push_back({"monitor alphabet differs from the declared inputs", {}});
  for (const auto& p : propositions(spec.body))
    if (!spec.props.index_of(p))
      out.push_back({"body mentions undeclared proposition '" + p + "'", {}});
  for (const auto& p : propositions(spec.assumption))
    if (!spec.props.index_of(p))
      out.push_back({"assumption mentions undeclared proposition '" + p + "'", {}});
  if (spec.trigger == TriggerKind::repeat && !is_cosafety(spec.body))
    out.push_back({"body not co-safety (required by a repeating trigger)", {}});
  if (spec.assumption != Formula::tt() && !is_gamma(spec.assumption))
    out.push_back({"assumption outside gamma fragment (conjunctions of G beta "
                   "and G F alpha)",
                   {}});
  return out;
}

Formula t_of(const MttlSpec& spec) {
  return Formula::implies(spec.assumption, spec.body);
}

namespace {

using Key = std::vector<std::int64_t>;

Key config_key(std::size_t phase, const Configuration& c) {
  Key k;
  k.reserve(c.val.size() + 2);
  k.push_back(static_cast<std::int64_t>(phase));
  k.push_back(static_cast<std::int64_t>(c.state));
  for (const auto& v : c.val) k.push_back(v.raw);
  return k;
}

std::size_t effective_bound(const Monitor& m, const LassoTrace& t,
                            std::size_t bound) {
  if (bound < t.size()) throw Error("oracle bound must cover prefix and loop");
  // Without variables the configuration space is the state set, so a
  // repeat at equal loop phase is found within |Q| loop turns.
  if (m.vars.empty())
    bound = std::max(bound, t.size() + t.loop.size() * (m.states.size() + 1));
  return bound;
}

enum class SegmentEnd { flagged, never, out_of_bound };

/// Runs the monitor from its initial configuration starting at `start`.
SegmentEnd run_segment(const Monitor& m, const LassoTrace& t, std::size_t start,
                       std::size_t bound, Letter in_mask, std::size_t& flag_at) {
  Configuration c = initial_configuration(m);
  std::set<Key> seen;
  for (std::size_t p = start;; ++p) {
    if (p >= t.period_start()) {
      std::size_t phase = (p - t.period_start()) % t.loop.size();
      if (!seen.insert(config_key(phase, c)).second) return SegmentEnd::never;
    }
    if (p >= bound) return SegmentEnd::out_of_bound;
    c = step(m, c, t.at(p) & in_mask);
    if (m.is_flagging(c.state)) {
      flag_at = p;
      return SegmentEnd::flagged;
    }
    if (c.state == m.sink) return SegmentEnd::never;
  }
}

}  // namespace

Verdict oracle_simple(const Monitor& m, const Formula& body,
                      const PropTable& props, const LassoTrace& t,
                      std::size_t bound) {
  bound = effective_bound(m, t, bound);
  Verdict v;
  std::size_t j = 0;
  switch (run_segment(m, t, 0, bound, props.input_mask(), j)) {
    case SegmentEnd::never:
      v.tag = Verdict::Tag::sat;
      v.reason = "monitor never flags";
      return v;
    case SegmentEnd::out_of_bound:
      v.tag = Verdict::Tag::unknown;
      v.reason = "monitor did not flag or cycle within " + std::to_string(bound) +
                 " steps";
      return v;
    case SegmentEnd::flagged:
      break;
  }
  v.flags.push_back(j);
  if (eval_lasso(body, props, t.suffix(j))) {
    v.tag = Verdict::Tag::sat;
    v.reason = "body holds from flag position " + std::to_string(j);
  } else {
    v.tag = Verdict::Tag::unsat;
    v.reason = "body fails from flag position " + std::to_string(j);
  }
  return v;
}

Verdict oracle_repeat(const Monitor& m, const Formula& body,
                      const PropTable& props, const LassoTrace& t,
                      std::size_t bound) {
  bound = effective_bound(m, t, bound);
  Verdict v;
  std::set<std::size_t> restart_phases;
  std::vector<Letter> unrolled;
  const std::size_t witness_span = (formula_size(body) + 1) * t.size() + 1;
  std::size_t pos = 0;
  for (;;) {
    if (pos >= t.period_start()) {
      std::size_t phase = (pos - t.period_start()) % t.loop.size();
      if (!restart_phases.insert(phase).second) {
        v.tag = Verdict::Tag::sat;
        v.reason = "repetition became periodic";
        return v;
      }
    }
    std::size_t j = 0;
    switch (run_segment(m, t, pos, bound, props.input_mask(), j)) {
      case SegmentEnd::never:
        v.tag = Verdict::Tag::sat;
        v.reason = "monitor never flags again";
        return v;
      case SegmentEnd::out_of_bound:
        v.tag = Verdict::Tag::unknown;
        v.reason = "monitor did not flag or cycle within " +
                   std::to_string(bound) + " steps";
        return v;
      case SegmentEnd::flagged:
        break;
    }
    v.flags.push_back(j);
    // On co-safety formulas the infinite suffix satisfies the body iff some
    // finite window from j does, so this decides whether a witness exists.
    if (!eval_lasso(body, props, t.suffix(j))) {
      v.tag = Verdict::Tag::unsat;
      v.reason = "no tight witness after flag position " + std::to_string(j);
      return v;
    }
    std::size_t k = j;
    for (;; ++k) {
      if (k > j + witness_span)
        throw Error("internal: witness search exceeded its bound");
      while (unrolled.size() <= k) unrolled.push_back(t.at(unrolled.size()));
      if (eval_finite(body, props, unrolled, j, k)) break;
    }
    v.windows.emplace_back(j, k);
    pos = k + 1;
  }
}

Verdict oracle(const MttlSpec& spec, const LassoTrace& t, std::size_t bound) {
  if (!eval_lasso(spec.assumption, spec.props, t)) {
    Verdict v;
    v.tag = Verdict::Tag::sat;
    v.reason = "assumption violated";
    return v;
  }
  return spec.trigger == TriggerKind::once
             ? oracle_simple(spec.monitor, spec.body, spec.props, t, bound)
             : oracle_repeat(spec.monitor, spec.body, spec.props, t, bound);
}

}  // namespace mtsyn
