#include "mtsyn/case_studies.hpp"

#include <sstream>

#include "mtsyn/error.hpp"
#include "mtsyn/interchange.hpp"

namespace mtsyn {

std::string max_in_seq_text(const std::string& x, const std::string& counter, int n) {
  // First k >= counter with x_{k+1} absent, or n when the whole bus is present.
  std::string out = std::to_string(n);
  for (int k = n - 1; k >= 0; --k) {
    out = "ite(" + counter + " < " + std::to_string(k + 1) + " && !in(" + x +
          std::to_string(k + 1) + "), " + std::to_string(k) + ", " + out + ")";
  }
  return out;
}

std::string two_bus_spec_text(int n, int m) {
  if (n < 1 || m < 1 || n + m + 1 > 64) throw Error("two-bus sizes must satisfy 1 <= n, m and n + m < 64");
  std::ostringstream out;
  out << "# Two event buses, n = " << n << ", m = " << m << "\n";
  out << "inputs: ";
  for (int i = 1; i <= n; ++i) out << (i > 1 ? ", " : "") << "p" << i;
  for (int i = 1; i <= m; ++i) out << ", q" << i;
  out << "\noutputs: acc\nassume: tt\ntrigger: once\nbody: G F acc\n";
  const std::string p = max_in_seq_text("p", "pCount", n);
  const std::string q = max_in_seq_text("q", "qCount", m);
  out << "monitor {\n"
      << "  var pCount: int = 0\n"
      << "  var qCount: int = 0\n"
      << "  state q0 initial\n"
      << "  state qF flag\n"
      << "  q0 -> q0 [!(" << p << " == " << n << " && " << q << " == " << m << ")] / { pCount := "
      << p << "; qCount := " << q << " }\n"
      << "  q0 -> qF [" << p << " == " << n << " && " << q << " == " << m << "]\n"
      << "}\n";
  return out.str();
}

std::string constant_controller_text(const PropTable& props, Letter on) {
  MealyMachine m;
  m.props = props;
  m.states = {"s0"};
  m.accepting = {0};
  m.edges = {{MealyEdge{InputCube{}, on & props.output_mask(), 0}}};
  return export_controller(m);
}

}  // namespace mtsyn
