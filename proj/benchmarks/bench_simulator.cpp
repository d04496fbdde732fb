#include <benchmark/benchmark.h>

#include <random>

#include "qdeut/ansatz.hpp"
#include "qdeut/circuit.hpp"
#include "qdeut/simulator.hpp"

namespace {

qdeut::Circuit random_circuit(int qubits, int gates, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<int> which(0, 2);
  std::uniform_int_distribution<int> pick(0, qubits - 1);
  std::uniform_real_distribution<double> angle(-3.14, 3.14);
  qdeut::Circuit c(qubits);
  for (int g = 0; g < gates; ++g) {
    switch (which(eng)) {
      case 0:
        c.push(qdeut::RotY{pick(eng), angle(eng)});
        break;
      case 1:
        c.push(qdeut::Hadamard{pick(eng)});
        break;
      default: {
        const int control = pick(eng);
        int target = pick(eng);
        while (target == control) target = pick(eng);
        c.push(qdeut::Cnot{control, target});
        break;
      }
    }
  }
  return c;
}

void BM_statevector_run(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const qdeut::Circuit c = random_circuit(qubits, 64, 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::run_pure(c));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_statevector_run)->DenseRange(2, 12, 2);

void BM_density_run_noisy(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const qdeut::Circuit c = random_circuit(qubits, 32, 29);
  qdeut::NoiseModel noise;
  noise.cnot_epsilon = 0.02;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::run_noisy(c, noise));
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_density_run_noisy)->DenseRange(2, 8, 2);

void BM_ansatz_expectation(benchmark::State& state) {
  const qdeut::Circuit c = qdeut::decompose_cry(qdeut::ansatz_circuit_n3(0.71, 0.27));
  for (auto _ : state) {
    const qdeut::Amplitudes psi = qdeut::run_pure(c);
    benchmark::DoNotOptimize(qdeut::expectation_string(psi, "XXI"));
  }
}
BENCHMARK(BM_ansatz_expectation);

void BM_sample_string(benchmark::State& state) {
  const long shots = state.range(0);
  const qdeut::Circuit c = qdeut::decompose_cry(qdeut::ansatz_circuit_n3(0.71, 0.27));
  const qdeut::NoiseModel noise;  // noiseless sampling
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::sample_string(c, "XXI", shots, noise, seed++));
  }
  state.SetItemsProcessed(state.iterations() * shots);
}
BENCHMARK(BM_sample_string)->Range(256, 65536);

}  // namespace
