#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdeut/simulator.hpp"

namespace qdeut {

// Evaluation modes for energy estimates:
//   exact      - noiseless statevector expectations, no sampling.
//   sampled    - statevector outcome distribution, finite shots, readout
//                confusion applied and corrected.
//   noisy      - density matrix with the per-CNOT white-noise channel;
//                shots = 0 means exact noisy expectations.
//   noisy_zne  - noisy evaluation per term at several noise scales with a
//                linear extrapolation back to zero noise.
enum class Mode { exact, sampled, noisy, noisy_zne };

std::string to_string(Mode mode);
Mode mode_from_string(std::string_view name);  // "exact", "sampled", "noisy", "noisy+zne"

// Backend configuration shared by the energy-estimation paths.
struct BackendConfig {
  Mode mode = Mode::exact;
  long shots = 8192;          // per term; 0 = exact expectations where allowed
  int iterations = 10;        // repeated estimates per noise scale in ZNE
  NoiseModel noise;
  std::vector<int> zne_scales = {1, 3, 5, 7};
  int workers = 0;            // 0 = machine parallelism

  // Readout correction is applied whenever readout errors are present and
  // the mode is not exact.
  bool corrects_readout() const {
    return mode != Mode::exact && noise.any_readout_error();
  }
};

}  // namespace qdeut
