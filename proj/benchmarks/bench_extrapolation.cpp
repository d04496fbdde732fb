#include <benchmark/benchmark.h>

#include "qdeut/extrapolation.hpp"
#include "qdeut/hamiltonian.hpp"

namespace {

std::vector<qdeut::ContinuumPoint> exact_points(double uncertainty) {
  std::vector<qdeut::ContinuumPoint> pts;
  for (int n = 1; n <= 3; ++n) {
    pts.push_back({qdeut::effective_radius(n), qdeut::exact_ground_energy(n),
                   uncertainty});
  }
  return pts;
}

void BM_fit_continuum_lo(benchmark::State& state) {
  const auto pts = exact_points(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::fit_continuum(qdeut::FitOrder::LO, pts));
  }
}
BENCHMARK(BM_fit_continuum_lo);

void BM_fit_continuum_n2lo(benchmark::State& state) {
  const auto pts = exact_points(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::fit_continuum(qdeut::FitOrder::N2LO, pts));
  }
}
BENCHMARK(BM_fit_continuum_n2lo);

void BM_fit_continuum_with_errors(benchmark::State& state) {
  // Nonzero input uncertainties trigger the corner-propagation refits
  // (2^points + 1 solves per call).
  const auto pts = exact_points(0.03);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdeut::fit_continuum(qdeut::FitOrder::NLO, pts));
  }
}
BENCHMARK(BM_fit_continuum_with_errors);

}  // namespace
