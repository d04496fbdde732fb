#pragma once

#include <cstdint>
#include <vector>

#include "qdeut/backend.hpp"
#include "qdeut/pauli.hpp"
#include "qdeut/simulator.hpp"

namespace qdeut {

// One axis of a rectangular parameter grid: `points` evenly spaced values
// covering [lo, hi] inclusive.
struct AxisSpec {
  double lo = -3.141592653589793;
  double hi = 3.141592653589793;
  int points = 13;

  std::vector<double> values() const;
};

// One grid axis per variational parameter (1 axis for the two-state ansatz,
// 2 axes for the three-state ansatz).
struct GridSpec {
  std::vector<AxisSpec> axes;

  long total_points() const;
  // Parameter vector for a flattened row-major grid index.
  std::vector<double> params_at(long flat_index) const;
};

GridSpec default_grid(int param_count);

// Energy estimate at one grid point.
struct LandscapeSample {
  std::vector<double> params;
  ExpectationEstimate energy;
};

// Per-term expectation estimates for the ansatz state at `params`, one entry
// per non-identity term of `hamiltonian` in its canonical order.  Estimation
// follows `backend.mode`; `grid_index` tags the RNG stream so every grid
// point draws independent shots.
std::vector<ExpectationEstimate> estimate_terms(const std::vector<double>& params,
                                                const PauliSum& hamiltonian,
                                                const BackendConfig& backend,
                                                std::uint64_t master_seed,
                                                long grid_index);

// Assembles a total energy estimate from per-term estimates (canonical
// order, identity terms skipped): identity coefficient added analytically,
// statistical errors combined in quadrature.
ExpectationEstimate combine_energy(const PauliSum& hamiltonian,
                                   const std::vector<ExpectationEstimate>& term_estimates);

// Total energy estimate at `params` (estimate_terms + combine_energy).
ExpectationEstimate energy_of(const std::vector<double>& params,
                              const PauliSum& hamiltonian,
                              const BackendConfig& backend,
                              std::uint64_t master_seed,
                              long grid_index);

// Energy estimates over every point of `grid`, evaluated with `workers`-way
// parallelism but bitwise independent of the worker count.
std::vector<LandscapeSample> scan_landscape(const PauliSum& hamiltonian,
                                            const GridSpec& grid,
                                            const BackendConfig& backend,
                                            std::uint64_t master_seed);

// Result of the scan-and-refine minimisation.
struct VqeResult {
  Mode mode = Mode::exact;
  std::uint64_t master_seed = 0;
  int rounds_requested = 0;
  int rounds_completed = 0;
  std::vector<double> best_params;
  double best_energy = 0.0;
  double stat_error = 0.0;       // per-point statistical error near the minimum
  double spline_residual = 0.0;  // cross-validated interpolation residual
  double uncertainty = 0.0;      // quadrature combination of the two above
  GridSpec final_grid;
  std::vector<LandscapeSample> final_samples;
};

// Scan the grid, fit a natural cubic spline (bicubic surface for two
// parameters), move the window to the spline minimum, shrink it by
// `shrink_factor`, and repeat up to `rounds` times.  With sampled estimates
// the refinement stops early once the next grid's predicted knot-to-knot
// energy variation near the minimum falls below the statistical noise floor:
// past that point adjacent knots are indistinguishable above shot noise and
// an interpolating spline through the rescan would follow the noise dips,
// biasing the fitted minimum downward.  Deterministic backends always run
// every round.
VqeResult refine_minimum(const PauliSum& hamiltonian,
                         const BackendConfig& backend,
                         const GridSpec& initial_grid,
                         std::uint64_t master_seed,
                         int rounds = 3,
                         double shrink_factor = 4.0);

// Convenience overload starting from default_grid for the basis size implied
// by the Hamiltonian's qubit count.
VqeResult refine_minimum(const PauliSum& hamiltonian,
                         const BackendConfig& backend,
                         std::uint64_t master_seed,
                         int rounds = 3);

}  // namespace qdeut
