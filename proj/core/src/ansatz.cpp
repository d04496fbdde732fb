#include "qdeut/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace qdeut {

Circuit ansatz_circuit_n2(double theta) {
  Circuit c(2);
  c.push(PauliX{0});
  c.push(RotY{1, theta});
  c.push(Cnot{1, 0});
  return c;
}

Circuit ansatz_circuit_n3(double eta, double theta) {
  Circuit c(3);
  c.push(PauliX{0});
  c.push(RotY{1, eta});
  c.push(Cnot{1, 0});
  c.push(ControlledRotY{0, 2, theta});
  c.push(Cnot{2, 0});
  return c;
}

int ansatz_param_count(int basis_size) {
  switch (basis_size) {
    case 2: return 1;
    case 3: return 2;
    default:
      throw std::invalid_argument("ansatz circuits exist for basis sizes 2 and 3, got " +
                                  std::to_string(basis_size));
  }
}

Circuit ansatz_circuit(int basis_size, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != ansatz_param_count(basis_size)) {
    throw std::invalid_argument("expected " + std::to_string(ansatz_param_count(basis_size)) +
                                " parameters for basis size " + std::to_string(basis_size));
  }
  return basis_size == 2 ? ansatz_circuit_n2(params[0])
                         : ansatz_circuit_n3(params[0], params[1]);
}

Circuit decompose_cry(const Circuit& circuit) {
  Circuit out(circuit.qubit_count);
  for (const auto& gate : circuit.gates) {
    if (const auto* cry = std::get_if<ControlledRotY>(&gate)) {
      out.push(RotY{cry->target, cry->theta / 2.0});
      out.push(Cnot{cry->control, cry->target});
      out.push(RotY{cry->target, -cry->theta / 2.0});
      out.push(Cnot{cry->control, cry->target});
    } else {
      out.push(gate);
    }
  }
  return out;
}

}  // namespace qdeut
