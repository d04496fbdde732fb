#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "qdeut/backend.hpp"
#include "qdeut/circuit.hpp"
#include "qdeut/fit.hpp"
#include "qdeut/pauli.hpp"
#include "qdeut/simulator.hpp"

namespace qdeut {

// Replace every CNOT with `scale` consecutive copies of itself.  `scale`
// must be an odd positive integer so that the replacement is logically the
// identity while multiplying the two-qubit noise exposure.  Circuits must be
// decomposed (no controlled rotations) first.
Circuit scale_noise(const Circuit& circuit, int scale);

// Expectation estimates of one Pauli string at several noise scales.
struct ZneSeries {
  std::string ops;
  std::vector<int> scales;
  std::vector<ExpectationEstimate> estimates;  // one per scale
};

// Measured zero-noise extrapolation for one series: a straight line through
// (scale, mean) pairs, inverse-variance weighted when every point carries a
// statistical error.
struct ZneFit {
  double intercept = 0.0;       // zero-noise estimate
  double intercept_err = 0.0;
  double slope = 0.0;
  double residual_rms = 0.0;
};

// Estimate `ops` on `circuit` under `backend.noise` at each scale in
// `backend.zne_scales`.  With shots == 0 each point is the exact noisy
// expectation (zero error bar); otherwise each point is the mean of
// `backend.iterations` independent sampled estimates with the standard error
// of that mean.  Readout errors, when present, are corrected before the
// series is assembled.  `term_index` tags the RNG stream.
ZneSeries zne_series(const Circuit& circuit,
                     std::string_view ops,
                     const BackendConfig& backend,
                     std::uint64_t master_seed,
                     long term_index);

ZneFit zne_extrapolate(const ZneSeries& series);

// Detail of one term inside a ZNE energy estimate.
struct ZneTermReport {
  double coefficient = 0.0;
  ZneSeries series;
  ZneFit fit;
};

struct ZneEnergy {
  ExpectationEstimate energy;          // mitigated total
  std::vector<ZneTermReport> terms;    // non-identity terms, canonical order
};

// Zero-noise-extrapolated energy of `hamiltonian` for the state prepared by
// `circuit`: per-term series and linear extrapolations, assembled with the
// identity coefficient added analytically and errors combined in quadrature.
ZneEnergy zne_energy(const PauliSum& hamiltonian,
                     const Circuit& circuit,
                     const BackendConfig& backend,
                     std::uint64_t master_seed);

// --- Readout error mitigation ----------------------------------------------

// Per-qubit confusion matrices, estimated from preparation/measurement runs
// (shots > 0) or taken directly from the noise model (shots == 0).
std::vector<ReadoutErrors> calibrate_readout(const NoiseModel& noise,
                                             int qubit_count,
                                             long shots,
                                             std::uint64_t master_seed);

// Apply the inverse confusion matrix of every qubit to an outcome
// distribution in place.  Throws numeric_error when a qubit's confusion is
// too close to singular (1 - e0 - e1 <= 0.1).
void correct_distribution(std::vector<double>& probabilities,
                          const std::vector<ReadoutErrors>& calibration);

// Correct a raw single-qubit <Z> estimate: mean -> (mean - b) / a with
// a = 1 - e0 - e1 and b = e1 - e0; the error bar scales by 1 / |a|.
ExpectationEstimate correct_expectation(const ExpectationEstimate& raw,
                                        const ReadoutErrors& calibration);

// Full estimation pipeline for one Pauli string under `backend`: basis
// rotation, outcome distribution (statevector or density matrix as the mode
// requires), finite-shot sampling, and readout correction when enabled.
// Not valid for Mode::noisy_zne, which composes this per scale.
ExpectationEstimate estimate_string(const Circuit& circuit,
                                    std::string_view ops,
                                    const BackendConfig& backend,
                                    std::uint64_t seed);

}  // namespace qdeut
