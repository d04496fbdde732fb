#include <benchmark/benchmark.h>

#include "qdeut/ansatz.hpp"
#include "qdeut/backend.hpp"
#include "qdeut/hamiltonian.hpp"
#include "qdeut/mitigation.hpp"
#include "qdeut/spline.hpp"
#include "qdeut/vqe.hpp"

namespace {

void BM_energy_point_exact(benchmark::State& state) {
  const qdeut::PauliSum h3 = qdeut::qubit_hamiltonian(3);
  const qdeut::BackendConfig backend;  // exact
  const std::vector<double> params = {0.71, 0.27};
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::energy_of(params, h3, backend, 1, 0));
  }
}
BENCHMARK(BM_energy_point_exact);

void BM_energy_point_sampled(benchmark::State& state) {
  const qdeut::PauliSum h3 = qdeut::qubit_hamiltonian(3);
  qdeut::BackendConfig backend;
  backend.mode = qdeut::Mode::sampled;
  backend.shots = state.range(0);
  const std::vector<double> params = {0.71, 0.27};
  long index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::energy_of(params, h3, backend, 1, index++));
  }
}
BENCHMARK(BM_energy_point_sampled)->Range(1024, 16384);

void BM_scan_landscape_exact(benchmark::State& state) {
  const qdeut::PauliSum h2 = qdeut::qubit_hamiltonian(2);
  qdeut::GridSpec grid = qdeut::default_grid(1);
  grid.axes[0].points = static_cast<int>(state.range(0));
  const qdeut::BackendConfig backend;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::scan_landscape(h2, grid, backend, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_scan_landscape_exact)->Arg(81);

void BM_refine_minimum_exact(benchmark::State& state) {
  const qdeut::PauliSum h3 = qdeut::qubit_hamiltonian(3);
  const qdeut::BackendConfig backend;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::refine_minimum(h3, backend, 1));
  }
}
BENCHMARK(BM_refine_minimum_exact);

void BM_spline_minimum(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  std::vector<double> x(points), y(points);
  for (int i = 0; i < points; ++i) {
    x[i] = -3.0 + 6.0 * i / (points - 1);
    y[i] = (x[i] - 0.6) * (x[i] - 0.6);
  }
  for (auto _ : state) {
    const qdeut::CubicSpline spline(x, y);
    benchmark::DoNotOptimize(spline.minimum());
  }
}
BENCHMARK(BM_spline_minimum)->Arg(13)->Arg(81);

void BM_zne_energy_exact_series(benchmark::State& state) {
  const qdeut::PauliSum h3 = qdeut::qubit_hamiltonian(3);
  const qdeut::Circuit circuit =
      qdeut::decompose_cry(qdeut::ansatz_circuit_n3(0.71, 0.27));
  qdeut::BackendConfig backend;
  backend.mode = qdeut::Mode::noisy_zne;
  backend.shots = 0;
  backend.noise.cnot_epsilon = 0.02;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::zne_energy(h3, circuit, backend, 1));
  }
}
BENCHMARK(BM_zne_energy_exact_series);

}  // namespace
