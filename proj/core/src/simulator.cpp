#include "qdeut/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qdeut/rng.hpp"

namespace qdeut {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::size_t dim_of(int n) { return std::size_t{1} << n; }

// Applies a 2x2 unitary to qubit q of the statevector.
void apply_single(Amplitudes& psi, int q, int n, const Eigen::Matrix2cd& u) {
  const std::size_t stride = std::size_t{1} << (n - 1 - q);
  const std::size_t dim = psi.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const std::complex<double> a0 = psi[i0];
      const std::complex<double> a1 = psi[i1];
      psi[i0] = u(0, 0) * a0 + u(0, 1) * a1;
      psi[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

Eigen::Matrix2cd roty_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd u;
  u << c, -s, s, c;
  return u;
}

Eigen::Matrix2cd sdgh_matrix() {
  // H * S_dagger: rotates the Y eigenbasis onto the Z basis.
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << r, -r * kI, r, r * kI;
  return u;
}

Eigen::Matrix2cd hadamard_matrix() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd u;
  u << r, r, r, -r;
  return u;
}

Eigen::Matrix2cd paulix_matrix() {
  Eigen::Matrix2cd u;
  u << 0, 1, 1, 0;
  return u;
}

std::size_t parse_label(std::string_view label, int n) {
  if (static_cast<int>(label.size()) != n) {
    throw std::invalid_argument("initial label length " + std::to_string(label.size()) +
                                " does not match qubit count " + std::to_string(n));
  }
  std::size_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("initial label must be a bit string");
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

Amplitudes initial_state(std::string_view label, int n) {
  Amplitudes psi = Amplitudes::Zero(dim_of(n));
  const std::size_t index = label.empty() ? 0 : parse_label(label, n);
  psi[index] = 1.0;
  return psi;
}

void apply_gate_columns(DensityMatrix& m, const Gate& gate, int n) {
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Amplitudes column = m.col(col);
    apply_gate(column, gate, n);
    m.col(col) = column;
  }
}

void check_ops(std::string_view ops, int n) {
  if (static_cast<int>(ops.size()) != n) {
    throw std::invalid_argument("Pauli string length does not match qubit count");
  }
  for (char c : ops) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
    }
  }
}

// Applies the per-qubit readout confusion matrix to a 2^n distribution.
void apply_confusion(std::vector<double>& probs, const NoiseModel& noise, int n) {
  for (int q = 0; q < n; ++q) {
    const ReadoutErrors err = noise.readout_for(q);
    if (err.perfect()) continue;
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    for (std::size_t base = 0; base < probs.size(); base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t i0 = base + off;
        const std::size_t i1 = i0 + stride;
        const double p0 = probs[i0];
        const double p1 = probs[i1];
        probs[i0] = (1.0 - err.e0) * p0 + err.e1 * p1;
        probs[i1] = err.e0 * p0 + (1.0 - err.e1) * p1;
      }
    }
  }
}

}  // namespace

ReadoutErrors NoiseModel::readout_for(int qubit) const {
  if (readout.empty()) return {};
  if (readout.size() == 1) return readout.front();
  if (qubit < 0 || qubit >= static_cast<int>(readout.size())) {
    throw std::invalid_argument("no readout calibration for qubit " + std::to_string(qubit));
  }
  return readout[qubit];
}

bool NoiseModel::any_readout_error() const {
  for (const auto& r : readout) {
    if (!r.perfect()) return true;
  }
  return false;
}

void apply_gate(Amplitudes& psi, const Gate& gate, int n) {
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, PauliX>) {
          apply_single(psi, g.q, n, paulix_matrix());
        } else if constexpr (std::is_same_v<T, RotY>) {
          apply_single(psi, g.q, n, roty_matrix(g.theta));
        } else if constexpr (std::is_same_v<T, Hadamard>) {
          apply_single(psi, g.q, n, hadamard_matrix());
        } else if constexpr (std::is_same_v<T, SdgH>) {
          apply_single(psi, g.q, n, sdgh_matrix());
        } else if constexpr (std::is_same_v<T, Cnot>) {
          const std::size_t cmask = std::size_t{1} << (n - 1 - g.control);
          const std::size_t tmask = std::size_t{1} << (n - 1 - g.target);
          const std::size_t dim = psi.size();
          for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) && !(i & tmask)) {
              std::swap(psi[i], psi[i | tmask]);
            }
          }
        } else {
          // ControlledRotY: rotate the target within the control=1 subspace.
          const std::size_t cmask = std::size_t{1} << (n - 1 - g.control);
          const std::size_t tmask = std::size_t{1} << (n - 1 - g.target);
          const Eigen::Matrix2cd u = roty_matrix(g.theta);
          const std::size_t dim = psi.size();
          for (std::size_t i = 0; i < dim; ++i) {
            if ((i & cmask) && !(i & tmask)) {
              const std::complex<double> a0 = psi[i];
              const std::complex<double> a1 = psi[i | tmask];
              psi[i] = u(0, 0) * a0 + u(0, 1) * a1;
              psi[i | tmask] = u(1, 0) * a0 + u(1, 1) * a1;
            }
          }
        }
      },
      gate);
}

Amplitudes run_pure(const Circuit& circuit, std::string_view initial_label) {
  Amplitudes psi = initial_state(initial_label, circuit.qubit_count);
  for (const auto& gate : circuit.gates) {
    apply_gate(psi, gate, circuit.qubit_count);
  }
  return psi;
}

void apply_white_noise(DensityMatrix& rho, int qa, int qb, double epsilon, int n) {
  if (epsilon == 0.0) return;
  if (qa == qb) throw std::invalid_argument("white-noise channel needs two distinct qubits");
  const std::size_t dim = dim_of(n);
  const std::size_t ma = std::size_t{1} << (n - 1 - qa);
  const std::size_t mb = std::size_t{1} << (n - 1 - qb);
  const std::size_t pair_mask = ma | mb;

  // sigma = Tr_pair(rho), indexed by the non-pair bits; the replacement is
  // sigma x I4/4 on the pair.
  DensityMatrix scaled = (1.0 - epsilon) * rho;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & pair_mask) continue;  // i ranges over indices with pair bits 0
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & pair_mask) continue;
      std::complex<double> traced = 0.0;
      for (std::size_t pa : {std::size_t{0}, ma}) {
        for (std::size_t pb : {std::size_t{0}, mb}) {
          traced += rho(i | pa | pb, j | pa | pb);
        }
      }
      const std::complex<double> replacement = epsilon * traced / 4.0;
      for (std::size_t pa : {std::size_t{0}, ma}) {
        for (std::size_t pb : {std::size_t{0}, mb}) {
          scaled(i | pa | pb, j | pa | pb) += replacement;
        }
      }
    }
  }
  rho = std::move(scaled);
}

DensityMatrix run_noisy(const Circuit& circuit, const NoiseModel& noise,
                        std::string_view initial_label) {
  if (circuit.has_controlled_roty()) {
    throw std::logic_error("noisy runs require controlled rotations to be decomposed to CNOTs");
  }
  const int n = circuit.qubit_count;
  Amplitudes init = initial_state(initial_label, n);
  DensityMatrix rho = init * init.adjoint();
  for (const auto& gate : circuit.gates) {
    // rho -> U rho U^dagger, applying U to columns of rho and then of rho^dagger.
    apply_gate_columns(rho, gate, n);
    rho = DensityMatrix(rho.adjoint());
    apply_gate_columns(rho, gate, n);
    rho = DensityMatrix(rho.adjoint());
    if (const auto* cnot = std::get_if<Cnot>(&gate)) {
      apply_white_noise(rho, cnot->control, cnot->target, noise.cnot_epsilon, n);
    }
  }
  return rho;
}

double expectation_string(const Amplitudes& psi, std::string_view ops) {
  const std::size_t dim = psi.size();
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  check_ops(ops, n);
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] == 'X' || ops[q] == 'Y') flip |= std::size_t{1} << (n - 1 - q);
  }
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    std::complex<double> phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const char c = ops[q];
      if (c == 'Y') {
        phase *= bit_of(i, q, n) ? -kI : kI;
      } else if (c == 'Z') {
        if (bit_of(i, q, n)) phase = -phase;
      }
    }
    acc += std::conj(psi[i ^ flip]) * phase * psi[i];
  }
  if (std::abs(acc.imag()) > 1e-8) {
    throw std::logic_error("Pauli expectation has a non-negligible imaginary part");
  }
  return acc.real();
}

double expectation_string(const DensityMatrix& rho, std::string_view ops) {
  const std::size_t dim = rho.rows();
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  check_ops(ops, n);
  std::size_t flip = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] == 'X' || ops[q] == 'Y') flip |= std::size_t{1} << (n - 1 - q);
  }
  // Tr(rho P) = sum_j rho(j, j^flip) * phase_j where P|j> = phase_j |j^flip>.
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    std::complex<double> phase = 1.0;
    for (int q = 0; q < n; ++q) {
      const char c = ops[q];
      if (c == 'Y') {
        phase *= bit_of(j, q, n) ? -kI : kI;
      } else if (c == 'Z') {
        if (bit_of(j, q, n)) phase = -phase;
      }
    }
    acc += rho(j, j ^ flip) * phase;
  }
  if (std::abs(acc.imag()) > 1e-8) {
    throw std::logic_error("Pauli expectation has a non-negligible imaginary part");
  }
  return acc.real();
}

double expectation(const Amplitudes& psi, const PauliSum& sum) {
  double total = 0.0;
  for (const auto& term : sum.terms()) {
    if (std::abs(term.coeff.imag()) > 1e-10) {
      throw std::invalid_argument("expectation requires real coefficients");
    }
    total += term.coeff.real() * expectation_string(psi, term.ops);
  }
  return total;
}

double expectation(const DensityMatrix& rho, const PauliSum& sum) {
  double total = 0.0;
  for (const auto& term : sum.terms()) {
    if (std::abs(term.coeff.imag()) > 1e-10) {
      throw std::invalid_argument("expectation requires real coefficients");
    }
    total += term.coeff.real() * expectation_string(rho, term.ops);
  }
  return total;
}

Circuit measurement_circuit(const Circuit& base, std::string_view ops) {
  check_ops(ops, base.qubit_count);
  Circuit out = base;
  bool any = false;
  for (int q = 0; q < base.qubit_count; ++q) {
    switch (ops[q]) {
      case 'X':
        out.push(Hadamard{q});
        any = true;
        break;
      case 'Y':
        out.push(SdgH{q});
        any = true;
        break;
      case 'Z':
        any = true;
        break;
      default:
        break;
    }
  }
  if (!any) {
    throw std::invalid_argument("identity strings are added analytically, not measured");
  }
  return out;
}

std::vector<double> outcome_distribution(const Circuit& circuit, const NoiseModel& noise) {
  const int n = circuit.qubit_count;
  std::vector<double> probs(dim_of(n));
  if (noise.cnot_epsilon > 0.0) {
    const DensityMatrix rho = run_noisy(circuit, noise);
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = rho(i, i).real();
  } else {
    const Amplitudes psi = run_pure(circuit);
    for (std::size_t i = 0; i < probs.size(); ++i) probs[i] = std::norm(psi[i]);
  }
  apply_confusion(probs, noise, n);
  return probs;
}

double parity_expectation(const std::vector<double>& probs, std::string_view ops) {
  const int n = static_cast<int>(ops.size());
  if (probs.size() != dim_of(n)) {
    throw std::invalid_argument("distribution size does not match Pauli string length");
  }
  std::size_t mask = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] != 'I') mask |= std::size_t{1} << (n - 1 - q);
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const int parity = std::popcount(i & mask) & 1;
    mean += (parity ? -1.0 : 1.0) * probs[i];
  }
  return mean;
}

ExpectationEstimate sample_string(const Circuit& circuit, std::string_view ops, long shots,
                                  const NoiseModel& noise, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shot count must be >= 1");
  const Circuit measured = measurement_circuit(circuit, ops);
  const std::vector<double> probs = outcome_distribution(measured, noise);

  const int n = circuit.qubit_count;
  std::size_t mask = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] != 'I') mask |= std::size_t{1} << (n - 1 - q);
  }

  std::mt19937_64 eng(seed);
  const std::vector<long> counts = multinomial_counts(probs, shots, eng);
  long plus = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const int parity = std::popcount(i & mask) & 1;
    if (!parity) plus += counts[i];
  }
  ExpectationEstimate est;
  est.shots = shots;
  est.mean = (2.0 * plus - shots) / static_cast<double>(shots);
  est.std_error = std::sqrt(std::max(0.0, (1.0 - est.mean * est.mean) / shots));
  return est;
}

}  // namespace qdeut
