#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <random>

#include "qdeut/hamiltonian.hpp"
#include "qdeut/pauli.hpp"

namespace {

qdeut::PauliSum random_sum(int qubits, int terms, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coeff(0.0, 1.0);
  const char alphabet[] = "IXYZ";
  qdeut::PauliSum sum(qubits);
  for (int t = 0; t < terms; ++t) {
    std::string ops(qubits, 'I');
    for (char& c : ops) c = alphabet[letter(eng)];
    sum.add(coeff(eng), ops);
  }
  return sum;
}

void BM_pauli_product(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const qdeut::PauliSum a = random_sum(qubits, 16, 7);
  const qdeut::PauliSum b = random_sum(qubits, 16, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize((a * b).simplified());
  }
}
BENCHMARK(BM_pauli_product)->DenseRange(2, 8, 2);

void BM_pauli_simplify(benchmark::State& state) {
  const qdeut::PauliSum sum = random_sum(6, static_cast<int>(state.range(0)), 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum.simplified());
  }
}
BENCHMARK(BM_pauli_simplify)->Range(16, 1024);

void BM_pauli_to_matrix(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  const qdeut::PauliSum sum = random_sum(qubits, 16, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sum.to_matrix());
  }
}
BENCHMARK(BM_pauli_to_matrix)->DenseRange(2, 8, 2);

void BM_jw_one_body(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 eng(19);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      m(i, j) = gauss(eng);
      m(j, i) = m(i, j);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::jw_one_body(m));
  }
}
BENCHMARK(BM_jw_one_body)->DenseRange(2, 10, 2);

void BM_qubit_hamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::qubit_hamiltonian(n));
  }
}
BENCHMARK(BM_qubit_hamiltonian)->DenseRange(2, 6, 1);

}  // namespace
