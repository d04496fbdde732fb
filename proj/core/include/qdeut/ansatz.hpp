#pragma once

#include <vector>

#include "qdeut/circuit.hpp"

namespace qdeut {

// Two-orbital ansatz: [X(0), RotY(1, theta), CNOT(1 -> 0)], preparing
// cos(theta/2)|10> + sin(theta/2)|01>. Exactly one CNOT.
Circuit ansatz_circuit_n2(double theta);

// Three-orbital ansatz:
// [X(0), RotY(1, eta), CNOT(1 -> 0), CRY(0 -> 2, theta), CNOT(2 -> 0)],
// preparing cos(eta/2)cos(theta/2)|100> + sin(eta/2)|010>
//         + cos(eta/2)sin(theta/2)|001>.
Circuit ansatz_circuit_n3(double eta, double theta);

// Number of variational parameters for a given basis size (1 for N=2,
// 2 for N=3). Throws std::invalid_argument outside {2, 3}.
int ansatz_param_count(int basis_size);

// Dispatch on basis size; params.size() must equal ansatz_param_count.
Circuit ansatz_circuit(int basis_size, const std::vector<double>& params);

// Replaces every ControlledRotY(c, t, theta) with
// [RotY(t, theta/2), CNOT(c -> t), RotY(t, -theta/2), CNOT(c -> t)], leaving
// all other gates untouched. The result is unitarily identical.
Circuit decompose_cry(const Circuit& circuit);

}  // namespace qdeut
