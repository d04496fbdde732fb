#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdeut/circuit.hpp"
#include "qdeut/pauli.hpp"

namespace qdeut {

using Amplitudes = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Per-qubit readout (assignment) errors: e0 = p(read 1 | true 0),
// e1 = p(read 0 | true 1). The confusion matrix is [[1-e0, e1], [e0, 1-e1]]
// (columns sum to 1).
struct ReadoutErrors {
  double e0 = 0.0;
  double e1 = 0.0;

  bool perfect() const { return e0 == 0.0 && e1 == 0.0; }
};

// Noise configuration: a two-qubit white-noise channel of strength
// cnot_epsilon after every CNOT, plus per-qubit readout errors. An empty
// readout vector means perfect readout; a single entry applies to every
// qubit; otherwise one entry per qubit.
struct NoiseModel {
  double cnot_epsilon = 0.0;
  std::vector<ReadoutErrors> readout;

  ReadoutErrors readout_for(int qubit) const;
  bool any_readout_error() const;
};

// Finite-shot estimate of a single Pauli-string expectation.
struct ExpectationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long shots = 0;
};

// Bit of basis index `index` for qubit q: qubit 0 is the leftmost label
// character, i.e. the most significant bit.
inline int bit_of(std::size_t index, int q, int n) {
  return static_cast<int>((index >> (n - 1 - q)) & 1U);
}

// Applies one gate to a statevector in place.
void apply_gate(Amplitudes& psi, const Gate& gate, int n);

// Runs the circuit on |initial>; default initial state is |00...0>.
// The label is a bit string, leftmost character = qubit 0.
Amplitudes run_pure(const Circuit& circuit, std::string_view initial_label = {});

// Density-matrix run: every gate acts unitarily and each CNOT is followed by
// rho -> (1-eps) rho + eps Tr_pair(rho) x I4/4 on the two touched qubits.
// Circuits must not contain ControlledRotY (decompose first); that is a
// caller contract violation and throws std::logic_error.
DensityMatrix run_noisy(const Circuit& circuit, const NoiseModel& noise,
                        std::string_view initial_label = {});

// The white-noise channel on one qubit pair, in place.
void apply_white_noise(DensityMatrix& rho, int qa, int qb, double epsilon, int n);

// <psi|P|psi> and Tr(rho P) for a single Pauli string (dimensionless) and for
// weighted sums (units of the coefficients). Results are real to 1e-8; the
// imaginary part is discarded after an internal consistency check.
double expectation_string(const Amplitudes& psi, std::string_view ops);
double expectation_string(const DensityMatrix& rho, std::string_view ops);
double expectation(const Amplitudes& psi, const PauliSum& sum);
double expectation(const DensityMatrix& rho, const PauliSum& sum);

// Copy of `base` with measurement basis changes appended: H for X, SdgH for
// Y, nothing for Z. Throws std::invalid_argument for all-identity strings
// (identity terms are added analytically, never sampled).
Circuit measurement_circuit(const Circuit& base, std::string_view ops);

// Probability of each Z-basis outcome after running `circuit` (pure when the
// channel strength is zero, density-matrix otherwise), with the readout
// confusion applied to the distribution.
std::vector<double> outcome_distribution(const Circuit& circuit, const NoiseModel& noise);

// Parity expectation of `ops` over a 2^n outcome distribution: the parity of
// each outcome's bits on the non-identity positions.
double parity_expectation(const std::vector<double>& probs, std::string_view ops);

// Finite-shot estimate of one Pauli-string expectation: builds the
// measurement circuit, forms the (readout-confused) outcome distribution,
// draws `shots` multinomial samples, and returns the parity mean with
// std_error = sqrt((1 - mean^2)/shots). Deterministic for a fixed seed.
ExpectationEstimate sample_string(const Circuit& circuit, std::string_view ops, long shots,
                                  const NoiseModel& noise, std::uint64_t seed);

}  // namespace qdeut
