#include "qdeut/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include "qdeut/ansatz.hpp"
#include "qdeut/errors.hpp"
#include "qdeut/parallel.hpp"
#include "qdeut/rng.hpp"

namespace qdeut {

namespace {

// Inverse of the per-qubit confusion matrix [[1-e0, e1], [e0, 1-e1]].
struct InverseConfusion {
  double m00, m01, m10, m11;
};

InverseConfusion invert_confusion(const ReadoutErrors& r) {
  const double a = 1.0 - r.e0 - r.e1;
  if (a <= 0.1) {
    throw numeric_error("readout confusion matrix is too close to singular (1 - e0 - e1 <= 0.1)");
  }
  return {(1.0 - r.e1) / a, -r.e1 / a, -r.e0 / a, (1.0 - r.e0) / a};
}

int qubits_from_size(std::size_t size) {
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  if ((std::size_t{1} << n) != size) {
    throw std::invalid_argument("distribution length must be a power of two");
  }
  return n;
}

// Error-bar inflation from inverting the confusion on the string's measured
// qubits: 1/|1 - e0 - e1| per non-identity position.
double correction_error_factor(std::string_view ops, const std::vector<ReadoutErrors>& cal) {
  double factor = 1.0;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    if (ops[q] == 'I') continue;
    const double a = 1.0 - cal[q].e0 - cal[q].e1;
    if (a <= 0.1) {
      throw numeric_error("readout confusion matrix is too close to singular (1 - e0 - e1 <= 0.1)");
    }
    factor /= a;
  }
  return factor;
}

}  // namespace

Circuit scale_noise(const Circuit& circuit, int scale) {
  if (scale < 1 || scale % 2 == 0) {
    throw std::invalid_argument("noise scale must be an odd positive integer, got " +
                                std::to_string(scale));
  }
  if (circuit.has_controlled_roty()) {
    throw std::logic_error("decompose controlled rotations before scaling noise");
  }
  Circuit scaled;
  scaled.qubit_count = circuit.qubit_count;
  for (const Gate& gate : circuit.gates) {
    const int copies = std::holds_alternative<Cnot>(gate) ? scale : 1;
    for (int c = 0; c < copies; ++c) scaled.gates.push_back(gate);
  }
  return scaled;
}

std::vector<ReadoutErrors> calibrate_readout(const NoiseModel& noise, int qubit_count,
                                             long shots, std::uint64_t master_seed) {
  if (qubit_count < 1) throw std::invalid_argument("qubit count must be >= 1");
  std::vector<ReadoutErrors> cal(qubit_count);
  if (shots <= 0) {
    for (int q = 0; q < qubit_count; ++q) cal[q] = noise.readout_for(q);
    return cal;
  }
  // Estimate each qubit's confusion from prepared |0> and |1> states.
  for (int q = 0; q < qubit_count; ++q) {
    for (int prep = 0; prep < 2; ++prep) {
      Circuit circuit;
      circuit.qubit_count = qubit_count;
      if (prep == 1) circuit.push(PauliX{q});
      const std::vector<double> probs = outcome_distribution(circuit, noise);
      std::mt19937_64 eng =
          make_engine(master_seed, "readout-calibration", static_cast<std::uint64_t>(q),
                      static_cast<std::uint64_t>(prep));
      const std::vector<long> counts = multinomial_counts(probs, shots, eng);
      long flipped = 0;
      for (std::size_t i = 0; i < counts.size(); ++i) {
        if (bit_of(i, q, qubit_count) != prep) flipped += counts[i];
      }
      const double rate = static_cast<double>(flipped) / static_cast<double>(shots);
      if (prep == 0) {
        cal[q].e0 = rate;
      } else {
        cal[q].e1 = rate;
      }
    }
  }
  return cal;
}

void correct_distribution(std::vector<double>& probabilities,
                          const std::vector<ReadoutErrors>& calibration) {
  const int n = qubits_from_size(probabilities.size());
  if (static_cast<int>(calibration.size()) != n) {
    throw std::invalid_argument("need one confusion matrix per qubit");
  }
  for (int q = 0; q < n; ++q) {
    if (calibration[q].perfect()) continue;
    const InverseConfusion inv = invert_confusion(calibration[q]);
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < probabilities.size(); base += 2 * stride) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        const std::size_t i0 = base + offset;
        const std::size_t i1 = i0 + stride;
        const double p0 = probabilities[i0];
        const double p1 = probabilities[i1];
        probabilities[i0] = inv.m00 * p0 + inv.m01 * p1;
        probabilities[i1] = inv.m10 * p0 + inv.m11 * p1;
      }
    }
  }
}

ExpectationEstimate correct_expectation(const ExpectationEstimate& raw,
                                        const ReadoutErrors& calibration) {
  const double a = 1.0 - calibration.e0 - calibration.e1;
  if (a <= 0.1) {
    throw numeric_error("readout confusion matrix is too close to singular (1 - e0 - e1 <= 0.1)");
  }
  const double b = calibration.e1 - calibration.e0;
  ExpectationEstimate corrected;
  corrected.mean = (raw.mean - b) / a;
  corrected.std_error = raw.std_error / a;
  corrected.shots = raw.shots;
  return corrected;
}

ExpectationEstimate estimate_string(const Circuit& circuit, std::string_view ops,
                                    const BackendConfig& backend, std::uint64_t seed) {
  if (backend.mode == Mode::noisy_zne) {
    throw std::logic_error("estimate_string evaluates a single noise scale; use zne_series");
  }
  if (backend.mode == Mode::exact) {
    ExpectationEstimate est;
    est.mean = expectation_string(run_pure(circuit), ops);
    return est;
  }

  // The sampled mode is a statevector run: only readout errors apply.
  NoiseModel noise = backend.noise;
  if (backend.mode == Mode::sampled) noise.cnot_epsilon = 0.0;

  const bool density = noise.cnot_epsilon > 0.0;
  const Circuit prepared =
      density && circuit.has_controlled_roty() ? decompose_cry(circuit) : circuit;
  const Circuit measured = measurement_circuit(prepared, ops);
  std::vector<double> probs = outcome_distribution(measured, noise);

  const bool correct = backend.corrects_readout();
  std::vector<ReadoutErrors> cal;
  if (correct) cal = calibrate_readout(noise, circuit.qubit_count, 0, 0);

  ExpectationEstimate est;
  if (backend.shots <= 0) {
    if (correct) correct_distribution(probs, cal);
    est.mean = parity_expectation(probs, ops);
    return est;
  }

  std::mt19937_64 eng(seed);
  const std::vector<long> counts = multinomial_counts(probs, backend.shots, eng);
  std::vector<double> frequencies(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    frequencies[i] = static_cast<double>(counts[i]) / static_cast<double>(backend.shots);
  }
  const double raw_mean = parity_expectation(frequencies, ops);
  double std_error =
      std::sqrt(std::max(0.0, (1.0 - raw_mean * raw_mean) / static_cast<double>(backend.shots)));
  if (correct) {
    correct_distribution(frequencies, cal);
    std_error *= correction_error_factor(ops, cal);
  }
  est.mean = parity_expectation(frequencies, ops);
  est.std_error = std_error;
  est.shots = backend.shots;
  return est;
}

ZneSeries zne_series(const Circuit& circuit, std::string_view ops, const BackendConfig& backend,
                     std::uint64_t master_seed, long term_index) {
  if (backend.zne_scales.empty()) {
    throw std::invalid_argument("need at least one noise scale");
  }
  const Circuit base = circuit.has_controlled_roty() ? decompose_cry(circuit) : circuit;

  ZneSeries series;
  series.ops = std::string(ops);
  series.scales = backend.zne_scales;
  series.estimates.reserve(backend.zne_scales.size());

  BackendConfig point = backend;
  point.mode = Mode::noisy;

  for (const int scale : backend.zne_scales) {
    const Circuit scaled = scale_noise(base, scale);
    if (backend.shots <= 0) {
      series.estimates.push_back(estimate_string(scaled, ops, point, 0));
      continue;
    }
    const int iterations = std::max(1, backend.iterations);
    std::vector<ExpectationEstimate> repeats;
    repeats.reserve(iterations);
    for (int iter = 0; iter < iterations; ++iter) {
      const std::uint64_t seed =
          derive_seed(master_seed, "zne", static_cast<std::uint64_t>(term_index),
                      static_cast<std::uint64_t>(scale), static_cast<std::uint64_t>(iter));
      repeats.push_back(estimate_string(scaled, ops, point, seed));
    }
    if (iterations == 1) {
      series.estimates.push_back(repeats.front());
      continue;
    }
    double mean = 0.0;
    for (const auto& r : repeats) mean += r.mean;
    mean /= iterations;
    double variance = 0.0;
    for (const auto& r : repeats) variance += (r.mean - mean) * (r.mean - mean);
    variance /= (iterations - 1);
    ExpectationEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(variance / iterations);
    est.shots = backend.shots * iterations;
    series.estimates.push_back(est);
  }
  return series;
}

ZneFit zne_extrapolate(const ZneSeries& series) {
  const std::size_t count = series.estimates.size();
  if (count != series.scales.size() || count < 2) {
    throw std::invalid_argument("need at least two noise scales to extrapolate");
  }
  std::vector<double> x(count), y(count), w(count, 1.0);
  bool all_errors = true;
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = static_cast<double>(series.scales[i]);
    y[i] = series.estimates[i].mean;
    if (series.estimates[i].std_error > 0.0) {
      w[i] = 1.0 / (series.estimates[i].std_error * series.estimates[i].std_error);
    } else {
      all_errors = false;
    }
  }
  if (!all_errors) std::fill(w.begin(), w.end(), 1.0);
  const LineFit line = fit_line(x, y, w, all_errors);
  ZneFit fit;
  fit.intercept = line.intercept;
  fit.intercept_err = line.intercept_err;
  fit.slope = line.slope;
  fit.residual_rms = line.residual_rms;
  return fit;
}

ZneEnergy zne_energy(const PauliSum& hamiltonian, const Circuit& circuit,
                     const BackendConfig& backend, std::uint64_t master_seed) {
  const PauliSum canonical = hamiltonian.simplified();
  if (!canonical.is_hermitian()) {
    throw std::invalid_argument("Hamiltonian coefficients must be real");
  }
  const std::string identity(canonical.qubit_count(), 'I');

  double identity_energy = 0.0;
  std::vector<const PauliTerm*> measured;
  for (const PauliTerm& term : canonical.terms()) {
    if (term.ops == identity) {
      identity_energy += term.coeff.real();
    } else {
      measured.push_back(&term);
    }
  }

  const Circuit base = circuit.has_controlled_roty() ? decompose_cry(circuit) : circuit;

  ZneEnergy result;
  result.terms.resize(measured.size());
  parallel_for(measured.size(), backend.workers, [&](std::size_t t) {
    ZneTermReport report;
    report.coefficient = measured[t]->coeff.real();
    report.series =
        zne_series(base, measured[t]->ops, backend, master_seed, static_cast<long>(t));
    report.fit = zne_extrapolate(report.series);
    result.terms[t] = std::move(report);
  });

  double energy = identity_energy;
  double variance = 0.0;
  for (const ZneTermReport& report : result.terms) {
    energy += report.coefficient * report.fit.intercept;
    const double contribution = report.coefficient * report.fit.intercept_err;
    variance += contribution * contribution;
  }
  result.energy.mean = energy;
  result.energy.std_error = std::sqrt(variance);
  result.energy.shots = backend.shots > 0 ? backend.shots : 0;
  return result;
}

}  // namespace qdeut
