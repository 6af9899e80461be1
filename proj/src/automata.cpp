#include "mtsyn/automata.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace mtsyn {

Projection make_projection(const std::vector<std::string>& local,
                           const PropTable& table) {
  Projection p;
  for (const auto& name : local) {
    auto idx = table.index_of(name);
    if (!idx) throw Error("proposition '" + name + "' is not declared");
    p.source_bits.push_back(*idx);
  }
  return p;
}

namespace {

StateSet merge(const StateSet& a, const StateSet& b) {
  StateSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Drops duplicate and subsumed cubes.
Dnf minimize(Dnf d) {
  std::sort(d.begin(), d.end(), [](const StateSet& x, const StateSet& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  d.erase(std::unique(d.begin(), d.end()), d.end());
  Dnf out;
  for (auto& c : d) {
    bool subsumed = std::any_of(out.begin(), out.end(), [&](const StateSet& kept) {
      return std::includes(c.begin(), c.end(), kept.begin(), kept.end());
    });
    if (!subsumed) out.push_back(std::move(c));
  }
  return out;
}

Dnf dnf_or(const Dnf& a, const Dnf& b) {
  Dnf out = a;
  out.insert(out.end(), b.begin(), b.end());
  return minimize(std::move(out));
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(merge(x, y));
  return minimize(std::move(out));
}

const Dnf kTrue{StateSet{}};
const Dnf kFalse{};

}  // namespace

Aww build_aww(const Formula& body) {
  Formula nnf = normalize(body);
  if (!is_cosafety(nnf)) throw Error("formula is not co-safety: " + to_string(body));
  Aww a;
  auto props = propositions(nnf);
  a.props.assign(props.begin(), props.end());
  a.states = subformulas(nnf);
  a.initial = static_cast<std::uint32_t>(a.states.size() - 1);  // post-order root
  return a;
}

Dnf Aww::delta(std::uint32_t state, Letter letter) const {
  using Op = Formula::Op;
  // States are in post-order, so children have smaller indices.
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (std::uint32_t i = 0; i < states.size(); ++i) index.emplace(states[i].id(), i);
  auto prop_holds = [&](const Formula& p) {
    auto it = std::find(props.begin(), props.end(), p.name());
    return (letter & bit(static_cast<std::size_t>(it - props.begin()))) != 0;
  };
  auto rec = [&](auto&& self, const Formula& f) -> Dnf {
    switch (f.op()) {
      case Op::tt: return kTrue;
      case Op::ff: return kFalse;
      case Op::prop: return prop_holds(f) ? kTrue : kFalse;
      case Op::lnot: return prop_holds(f.child(0)) ? kFalse : kTrue;
      case Op::land: return dnf_and(self(self, f.child(0)), self(self, f.child(1)));
      case Op::lor: return dnf_or(self(self, f.child(0)), self(self, f.child(1)));
      case Op::next: return Dnf{StateSet{index.at(f.child(0).id())}};
      case Op::until: {
        Dnf stay = dnf_and(self(self, f.child(0)), Dnf{StateSet{index.at(f.id())}});
        return dnf_or(self(self, f.child(1)), stay);
      }
      default:
        throw Error("unexpected operator in co-safety automaton");
    }
  };
  return rec(rec, states.at(state));
}

Nfw aww_to_nfw(const Aww& a) {
  Nfw n;
  n.props = a.props;
  const std::size_t letters = a.num_letters();
  // delta cache per (AWW state, letter)
  std::vector<std::vector<Dnf>> cache(a.states.size(), std::vector<Dnf>(letters));
  std::vector<std::vector<char>> cached(a.states.size(), std::vector<char>(letters, 0));
  auto delta = [&](std::uint32_t s, Letter l) -> const Dnf& {
    if (!cached[s][l]) {
      cache[s][l] = a.delta(s, l);
      cached[s][l] = 1;
    }
    return cache[s][l];
  };

  std::map<StateSet, std::uint32_t> ids;
  auto intern = [&](const StateSet& s) {
    auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(n.states.size()));
    if (fresh) {
      n.states.push_back(s);
      n.successors.emplace_back();
    }
    return it->second;
  };
  n.initial = intern(StateSet{a.initial});
  for (std::uint32_t cur = 0; cur < n.states.size(); ++cur) {
    std::vector<std::vector<std::uint32_t>> row(letters);
    for (Letter l = 0; l < letters; ++l) {
      Dnf acc = kTrue;
      for (std::uint32_t s : n.states[cur]) {
        acc = dnf_and(acc, delta(s, l));
        if (acc.empty()) break;
      }
      for (const auto& cube : acc) row[l].push_back(intern(cube));
      std::sort(row[l].begin(), row[l].end());
    }
    n.successors[cur] = std::move(row);
  }
  auto it = ids.find(StateSet{});
  if (it != ids.end()) {
    n.accepting = it->second;
    n.has_accepting = true;
  }
  return n;
}

Dfw nfw_to_dfw(const Nfw& n) {
  Dfw d;
  d.props = n.props;
  const std::size_t letters = n.num_letters();
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  std::uint32_t accept_id = kNone;

  auto is_accepting = [&](const std::vector<std::uint32_t>& subset) {
    return n.has_accepting &&
           std::binary_search(subset.begin(), subset.end(), n.accepting);
  };
  auto intern = [&](std::vector<std::uint32_t> subset) {
    if (is_accepting(subset)) {
      if (accept_id == kNone) {
        accept_id = static_cast<std::uint32_t>(d.subsets.size());
        d.subsets.push_back({n.accepting});
        d.accepting.push_back(1);
      }
      return accept_id;
    }
    auto [it, fresh] = ids.emplace(subset, static_cast<std::uint32_t>(d.subsets.size()));
    if (fresh) {
      d.subsets.push_back(std::move(subset));
      d.accepting.push_back(0);
    }
    return it->second;
  };

  d.initial = intern({n.initial});
  for (std::uint32_t cur = 0; cur < d.subsets.size(); ++cur) {
    d.table.resize((cur + 1) * letters);
    if (d.accepting[cur]) {
      for (Letter l = 0; l < letters; ++l) d.table[cur * letters + l] = cur;
      continue;
    }
    for (Letter l = 0; l < letters; ++l) {
      std::vector<std::uint32_t> next;
      for (std::uint32_t s : d.subsets[cur]) {
        const auto& succ = n.successors[s][l];
        next.insert(next.end(), succ.begin(), succ.end());
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      std::uint32_t target = intern(std::move(next));
      d.table[cur * letters + l] = target;
    }
  }
  return d;
}

Dfw build_dfw(const Formula& body) { return nfw_to_dfw(aww_to_nfw(build_aww(body))); }

bool Dfw::accepts(const std::vector<Letter>& word) const {
  std::uint32_t s = initial;
  for (Letter l : word) s = step(s, l);
  return is_accepting(s);
}

}  // namespace mtsyn
