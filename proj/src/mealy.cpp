#include "mtsyn/mealy.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "mtsyn/error.hpp"

namespace mtsyn {

MealyMachine::Move MealyMachine::step(std::uint32_t state, Letter input) const {
  input &= props.input_mask();
  for (const auto& e : edges.at(state))
    if (e.input.matches(input)) return {e.output, e.target};
  throw Error("controller has no transition from '" + states.at(state) +
              "' on input " + props.format(input));
}

bool MealyMachine::has_accepting() const {
  return std::any_of(accepting.begin(), accepting.end(), [](char c) { return c != 0; });
}

std::size_t MealyMachine::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : edges) n += row.size();
  return n;
}

void check_machine(const MealyMachine& m) {
  const std::size_t ni = m.props.num_inputs();
  if (m.states.empty()) throw Error("controller has no states");
  if (m.initial >= m.states.size()) throw Error("initial state out of range");
  if (m.accepting.size() != m.states.size() || m.edges.size() != m.states.size())
    throw Error("controller tables do not match the state list");
  for (std::size_t s = 0; s < m.states.size(); ++s) {
    unsigned __int128 covered = 0;
    const auto& row = m.edges[s];
    for (std::size_t a = 0; a < row.size(); ++a) {
      const auto& e = row[a];
      if (e.target >= m.states.size())
        throw Error("transition from '" + m.states[s] + "' targets an unknown state");
      if ((e.input.care & ~m.props.input_mask()) != 0 ||
          (e.input.value & ~e.input.care) != 0)
        throw Error("malformed input pattern in state '" + m.states[s] + "'");
      if ((e.output & ~m.props.output_mask()) != 0)
        throw Error("output outside the output alphabet in state '" + m.states[s] + "'");
      for (std::size_t b = a + 1; b < row.size(); ++b)
        if (e.input.intersects(row[b].input))
          throw Error("nondeterministic: two transitions from '" + m.states[s] +
                      "' share an input valuation");
      std::size_t free_bits = ni - static_cast<std::size_t>(std::popcount(e.input.care));
      covered += static_cast<unsigned __int128>(1) << free_bits;
    }
    if (covered != (static_cast<unsigned __int128>(1) << ni))
      throw Error("incomplete: state '" + m.states[s] +
                  "' does not cover every input valuation");
  }
}

void compress(MealyMachine& m) {
  for (auto& row : m.edges) {
    std::map<std::pair<Letter, std::uint32_t>, std::vector<InputCube>> groups;
    std::vector<std::pair<Letter, std::uint32_t>> order;
    for (const auto& e : row) {
      auto key = std::make_pair(e.output, e.target);
      if (!groups.count(key)) order.push_back(key);
      groups[key].push_back(e.input);
    }
    std::vector<MealyEdge> out;
    for (const auto& key : order) {
      auto& cubes = groups[key];
      for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t a = 0; a < cubes.size() && !merged; ++a) {
          for (std::size_t b = a + 1; b < cubes.size() && !merged; ++b) {
            if (cubes[a].care != cubes[b].care) continue;
            Letter diff = cubes[a].value ^ cubes[b].value;
            if (std::popcount(diff) != 1) continue;
            cubes[a].care &= ~diff;
            cubes[a].value &= ~diff;
            cubes.erase(cubes.begin() + static_cast<std::ptrdiff_t>(b));
            merged = true;
          }
        }
      }
      std::sort(cubes.begin(), cubes.end(), [](const InputCube& x, const InputCube& y) {
        return x.care != y.care ? x.care < y.care : x.value < y.value;
      });
      for (const auto& c : cubes) out.push_back({c, key.first, key.second});
    }
    row = std::move(out);
  }
}

MealyMachine without_accepting(MealyMachine m) {
  std::fill(m.accepting.begin(), m.accepting.end(), 0);
  return m;
}

MealyMachine mark_tight(const MealyMachine& c, const Dfw& d) {
  const Projection proj = make_projection(d.props, c.props);
  // DFW-relevant input bits that a cube may leave open.
  Letter dfw_inputs = 0;
  for (std::size_t b : proj.source_bits)
    if (b < c.props.num_inputs()) dfw_inputs |= bit(b);
  const std::uint32_t retired = static_cast<std::uint32_t>(d.size());

  MealyMachine out;
  out.props = c.props;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> todo;
  auto intern = [&](std::uint32_t cs, std::uint32_t ds) {
    auto [it, fresh] = ids.emplace(std::make_pair(cs, ds),
                                   static_cast<std::uint32_t>(out.states.size()));
    if (fresh) {
      out.states.push_back(c.states[cs] + "|" +
                           (ds == retired ? std::string("done") : "d" + std::to_string(ds)));
      out.accepting.push_back(ds != retired && d.is_accepting(ds) ? 1 : 0);
      out.edges.emplace_back();
      todo.emplace_back(cs, ds);
    }
    return it->second;
  };
  out.initial = intern(c.initial, d.initial);
  for (std::size_t k = 0; k < todo.size(); ++k) {
    auto [cs, ds] = todo[k];
    std::uint32_t self = ids.at({cs, ds});
    std::vector<MealyEdge> row;
    for (const auto& e : c.edges[cs]) {
      Letter open = dfw_inputs & ~e.input.care;
      // Enumerate assignments of the open DFW input bits.
      Letter sub = 0;
      do {
        InputCube cube{e.input.care | open, e.input.value | sub};
        std::uint32_t next_d;
        if (ds == retired || d.is_accepting(ds)) {
          next_d = retired;
        } else {
          next_d = d.step(ds, proj.apply(cube.value | e.output));
        }
        std::uint32_t target = intern(e.target, next_d);
        row.push_back({cube, e.output, target});
        sub = (sub - open) & open;
      } while (sub != 0);
    }
    out.edges[self] = std::move(row);
  }
  compress(out);
  return out;
}

}  // namespace mtsyn
