#include "qdeut/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qdeut {
namespace {

std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_index(int q, int n) {
  if (q < 0 || q >= n) {
    throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(n) + " qubits");
  }
}

}  // namespace

void Circuit::push(const Gate& gate) {
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Cnot> || std::is_same_v<T, ControlledRotY>) {
          check_index(g.control, qubit_count);
          check_index(g.target, qubit_count);
          if (g.control == g.target) {
            throw std::invalid_argument("control and target qubits must differ");
          }
        } else {
          check_index(g.q, qubit_count);
        }
      },
      gate);
  gates.push_back(gate);
}

int Circuit::cnot_count() const {
  int count = 0;
  for (const auto& g : gates) {
    if (std::holds_alternative<Cnot>(g)) ++count;
  }
  return count;
}

bool Circuit::has_controlled_roty() const {
  return std::any_of(gates.begin(), gates.end(),
                     [](const Gate& g) { return std::holds_alternative<ControlledRotY>(g); });
}

std::string Circuit::to_text() const {
  std::string out;
  for (const auto& g : gates) {
    std::visit(
        [&](const auto& gate) {
          using T = std::decay_t<decltype(gate)>;
          if constexpr (std::is_same_v<T, PauliX>) {
            out += "X " + std::to_string(gate.q);
          } else if constexpr (std::is_same_v<T, RotY>) {
            out += "RY " + std::to_string(gate.q) + " " + format_angle(gate.theta);
          } else if constexpr (std::is_same_v<T, Hadamard>) {
            out += "H " + std::to_string(gate.q);
          } else if constexpr (std::is_same_v<T, SdgH>) {
            out += "SDGH " + std::to_string(gate.q);
          } else if constexpr (std::is_same_v<T, Cnot>) {
            out += "CNOT " + std::to_string(gate.control) + " " + std::to_string(gate.target);
          } else {
            out += "CRY " + std::to_string(gate.control) + " " + std::to_string(gate.target) +
                   " " + format_angle(gate.theta);
          }
          out += '\n';
        },
        g);
  }
  return out;
}

Circuit Circuit::from_text(std::string_view text, int qubit_count) {
  struct Parsed {
    Gate gate;
    int max_index;
  };
  std::vector<Parsed> parsed;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    auto need = [&](auto& value) {
      if (!(ls >> value)) {
        throw std::invalid_argument("malformed gate line: '" + line + "'");
      }
    };
    if (kind == "X") {
      int q;
      need(q);
      parsed.push_back({PauliX{q}, q});
    } else if (kind == "RY") {
      int q;
      double theta;
      need(q);
      need(theta);
      parsed.push_back({RotY{q, theta}, q});
    } else if (kind == "H") {
      int q;
      need(q);
      parsed.push_back({Hadamard{q}, q});
    } else if (kind == "SDGH") {
      int q;
      need(q);
      parsed.push_back({SdgH{q}, q});
    } else if (kind == "CNOT") {
      int c, t;
      need(c);
      need(t);
      parsed.push_back({Cnot{c, t}, std::max(c, t)});
    } else if (kind == "CRY") {
      int c, t;
      double theta;
      need(c);
      need(t);
      need(theta);
      parsed.push_back({ControlledRotY{c, t, theta}, std::max(c, t)});
    } else {
      throw std::invalid_argument("unknown gate kind '" + kind + "'");
    }
  }
  int n = qubit_count;
  if (n < 0) {
    n = 0;
    for (const auto& p : parsed) n = std::max(n, p.max_index + 1);
  }
  Circuit out(n);
  for (const auto& p : parsed) out.push(p.gate);
  return out;
}

}  // namespace qdeut
