#include "qdeut/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "qdeut/ansatz.hpp"
#include "qdeut/mitigation.hpp"
#include "qdeut/parallel.hpp"
#include "qdeut/rng.hpp"
#include "qdeut/spline.hpp"

namespace qdeut {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stop refining once the next grid's predicted knot-to-knot energy variation
// near the minimum drops below this multiple of the median per-point
// statistical error: adjacent knots would then be indistinguishable above
// shot noise, and an interpolating spline through such a scan picks up the
// noise dips, biasing the fitted minimum value downward by roughly two error
// bars.
constexpr double kNoiseFloorFactor = 2.0;

struct SplineMinimum {
  std::vector<double> location;
  double value = 0.0;
};

std::vector<double> sample_means(const std::vector<LandscapeSample>& samples) {
  std::vector<double> means;
  means.reserve(samples.size());
  for (const auto& s : samples) means.push_back(s.energy.mean);
  return means;
}

// Knot-to-knot energy variation the NEXT grid would see near the minimum,
// |c|·h²/2 per axis with h the next knot spacing and c the local curvature.
// Once this drops below the per-point statistical error, a rescan could not
// distinguish adjacent knots and an interpolating spline through it would
// chase shot noise. The curvature comes from a least-squares quadratic over
// the samples within the next window plus a two-spacing margin: the fit
// averages the noise out, whereas probing the noisy interpolant directly
// would inflate the prediction by the very noise being compared against.
constexpr double kCellFitMargin = 2.0;  // fit region margin, in knot spacings

double predicted_cell_variation_1d(const std::vector<double>& xs,
                                   const std::vector<double>& ys, double lo, double hi,
                                   double spacing, double next_spacing) {
  const double center = 0.5 * (lo + hi);
  const double margin = kCellFitMargin * spacing;
  std::vector<double> dx, y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= lo - margin && xs[i] <= hi + margin) {
      dx.push_back(xs[i] - center);
      y.push_back(ys[i]);
    }
  }
  if (dx.size() < 4) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd design(dx.size(), 3);
  Eigen::VectorXd rhs(dx.size());
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const Eigen::Index r = static_cast<Eigen::Index>(i);
    design(r, 0) = 1.0;
    design(r, 1) = dx[i];
    design(r, 2) = dx[i] * dx[i];
    rhs(r) = y[i];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(rhs);
  return 0.5 * std::abs(coef(2)) * next_spacing * next_spacing;
}

double predicted_cell_variation_2d(const std::vector<LandscapeSample>& samples,
                                   const std::vector<double>& lo, const std::vector<double>& hi,
                                   const std::vector<double>& spacing,
                                   const std::vector<double>& next_spacing) {
  const double cx = 0.5 * (lo[0] + hi[0]);
  const double cy = 0.5 * (lo[1] + hi[1]);
  const double mx = kCellFitMargin * spacing[0];
  const double my = kCellFitMargin * spacing[1];
  std::vector<double> dx, dy, y;
  for (const LandscapeSample& sample : samples) {
    const double px = sample.params[0];
    const double py = sample.params[1];
    if (px >= lo[0] - mx && px <= hi[0] + mx && py >= lo[1] - my && py <= hi[1] + my) {
      dx.push_back(px - cx);
      dy.push_back(py - cy);
      y.push_back(sample.energy.mean);
    }
  }
  if (dx.size() < 8) return std::numeric_limits<double>::infinity();
  Eigen::MatrixXd design(dx.size(), 6);
  Eigen::VectorXd rhs(dx.size());
  for (std::size_t i = 0; i < dx.size(); ++i) {
    const Eigen::Index r = static_cast<Eigen::Index>(i);
    design(r, 0) = 1.0;
    design(r, 1) = dx[i];
    design(r, 2) = dy[i];
    design(r, 3) = dx[i] * dx[i];
    design(r, 4) = dx[i] * dy[i];
    design(r, 5) = dy[i] * dy[i];
    rhs(r) = y[i];
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  const double vx = 0.5 * std::abs(coef(3)) * next_spacing[0] * next_spacing[0];
  const double vy = 0.5 * std::abs(coef(5)) * next_spacing[1] * next_spacing[1];
  return std::max(vx, vy);
}

double median_std_error(const std::vector<LandscapeSample>& samples) {
  std::vector<double> errors;
  errors.reserve(samples.size());
  for (const auto& s : samples) errors.push_back(s.energy.std_error);
  std::sort(errors.begin(), errors.end());
  const std::size_t n = errors.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? errors[n / 2] : 0.5 * (errors[n / 2 - 1] + errors[n / 2]);
}

// Root-mean-square deviation between a spline fitted through the even-index
// subgrid and the measured values at the remaining points. Gauges how much
// of the landscape the interpolant fails to explain (interpolation error in
// exact mode, shot noise in sampled modes).
double cross_validation_residual_1d(const std::vector<double>& xs,
                                    const std::vector<double>& ys) {
  std::vector<double> ex, ey;
  for (std::size_t i = 0; i < xs.size(); i += 2) {
    ex.push_back(xs[i]);
    ey.push_back(ys[i]);
  }
  if (ex.size() < 4) return 0.0;
  const CubicSpline fit(ex, ey);
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 1; i < xs.size(); i += 2) {
    const double dev = fit(xs[i]) - ys[i];
    sum += dev * dev;
    ++count;
  }
  return count > 0 ? std::sqrt(sum / count) : 0.0;
}

double cross_validation_residual_2d(const std::vector<double>& vx,
                                    const std::vector<double>& vy,
                                    const Eigen::MatrixXd& z) {
  std::vector<double> ex, ey;
  for (std::size_t i = 0; i < vx.size(); i += 2) ex.push_back(vx[i]);
  for (std::size_t j = 0; j < vy.size(); j += 2) ey.push_back(vy[j]);
  if (ex.size() < 4 || ey.size() < 4) return 0.0;
  Eigen::MatrixXd ez(ex.size(), ey.size());
  for (std::size_t i = 0; i < ex.size(); ++i) {
    for (std::size_t j = 0; j < ey.size(); ++j) {
      ez(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          z(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * j));
    }
  }
  const BicubicSpline fit(ex, ey, ez);
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < vx.size(); ++i) {
    for (std::size_t j = 0; j < vy.size(); ++j) {
      if (i % 2 == 0 && j % 2 == 0) continue;
      const double dev = fit(vx[i], vy[j]) -
                         z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      sum += dev * dev;
      ++count;
    }
  }
  return count > 0 ? std::sqrt(sum / count) : 0.0;
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  if (points < 1) throw std::invalid_argument("axis needs at least one point");
  if (!(lo <= hi)) throw std::invalid_argument("axis lower bound must not exceed upper bound");
  std::vector<double> v(points);
  if (points == 1) {
    v[0] = lo;
    return v;
  }
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) v[i] = lo + step * i;
  v[points - 1] = hi;
  return v;
}

long GridSpec::total_points() const {
  long total = 1;
  for (const AxisSpec& axis : axes) {
    if (axis.points < 1) throw std::invalid_argument("axis needs at least one point");
    total *= axis.points;
  }
  return axes.empty() ? 0 : total;
}

std::vector<double> GridSpec::params_at(long flat_index) const {
  const long total = total_points();
  if (flat_index < 0 || flat_index >= total) {
    throw std::invalid_argument("grid index out of range");
  }
  std::vector<double> params(axes.size());
  long rem = flat_index;
  for (std::size_t a = axes.size(); a-- > 0;) {
    const long size = axes[a].points;
    const long idx = rem % size;
    rem /= size;
    params[a] = axes[a].values()[static_cast<std::size_t>(idx)];
  }
  return params;
}

GridSpec default_grid(int param_count) {
  if (param_count < 1 || param_count > 2) {
    throw std::invalid_argument("parameter grids support one or two axes");
  }
  GridSpec grid;
  grid.axes.assign(param_count, AxisSpec{-kPi, kPi, 13});
  return grid;
}

std::vector<ExpectationEstimate> estimate_terms(const std::vector<double>& params,
                                                const PauliSum& hamiltonian,
                                                const BackendConfig& backend,
                                                std::uint64_t master_seed, long grid_index) {
  const PauliSum canonical = hamiltonian.simplified();
  if (!canonical.is_hermitian()) {
    throw std::invalid_argument("Hamiltonian coefficients must be real");
  }
  const int n = canonical.qubit_count();
  if (static_cast<int>(params.size()) != ansatz_param_count(n)) {
    throw std::invalid_argument("parameter count does not match the ansatz");
  }
  const Circuit circuit = ansatz_circuit(n, params);
  const std::string identity(n, 'I');

  std::vector<ExpectationEstimate> estimates;
  long term_index = 0;
  for (const PauliTerm& term : canonical.terms()) {
    if (term.ops == identity) continue;
    if (backend.mode == Mode::noisy_zne) {
      const std::uint64_t point_seed =
          derive_seed(master_seed, "zne-point", static_cast<std::uint64_t>(grid_index));
      const ZneSeries series = zne_series(circuit, term.ops, backend, point_seed, term_index);
      const ZneFit fit = zne_extrapolate(series);
      ExpectationEstimate est;
      est.mean = fit.intercept;
      est.std_error = fit.intercept_err;
      est.shots = backend.shots > 0 ? backend.shots : 0;
      estimates.push_back(est);
    } else {
      const std::uint64_t seed =
          derive_seed(master_seed, "term", static_cast<std::uint64_t>(grid_index),
                      static_cast<std::uint64_t>(term_index));
      estimates.push_back(estimate_string(circuit, term.ops, backend, seed));
    }
    ++term_index;
  }
  return estimates;
}

ExpectationEstimate combine_energy(const PauliSum& hamiltonian,
                                   const std::vector<ExpectationEstimate>& term_estimates) {
  const PauliSum canonical = hamiltonian.simplified();
  const std::string identity(canonical.qubit_count(), 'I');

  double mean = 0.0;
  double variance = 0.0;
  long shots = 0;
  std::size_t index = 0;
  for (const PauliTerm& term : canonical.terms()) {
    if (term.ops == identity) {
      mean += term.coeff.real();
      continue;
    }
    if (index >= term_estimates.size()) {
      throw std::invalid_argument("one estimate per non-identity term is required");
    }
    const ExpectationEstimate& est = term_estimates[index++];
    mean += term.coeff.real() * est.mean;
    const double contribution = term.coeff.real() * est.std_error;
    variance += contribution * contribution;
    shots = std::max(shots, est.shots);
  }
  if (index != term_estimates.size()) {
    throw std::invalid_argument("one estimate per non-identity term is required");
  }
  ExpectationEstimate energy;
  energy.mean = mean;
  energy.std_error = std::sqrt(variance);
  energy.shots = shots;
  return energy;
}

ExpectationEstimate energy_of(const std::vector<double>& params, const PauliSum& hamiltonian,
                              const BackendConfig& backend, std::uint64_t master_seed,
                              long grid_index) {
  const PauliSum canonical = hamiltonian.simplified();
  return combine_energy(
      canonical, estimate_terms(params, canonical, backend, master_seed, grid_index));
}

std::vector<LandscapeSample> scan_landscape(const PauliSum& hamiltonian, const GridSpec& grid,
                                            const BackendConfig& backend,
                                            std::uint64_t master_seed) {
  const int n = hamiltonian.qubit_count();
  if (static_cast<int>(grid.axes.size()) != ansatz_param_count(n)) {
    throw std::invalid_argument("grid axis count does not match the ansatz parameter count");
  }
  const long total = grid.total_points();
  std::vector<std::vector<double>> axis_values;
  axis_values.reserve(grid.axes.size());
  for (const AxisSpec& axis : grid.axes) axis_values.push_back(axis.values());

  std::vector<LandscapeSample> samples(static_cast<std::size_t>(total));
  parallel_for(static_cast<std::size_t>(total), backend.workers, [&](std::size_t flat) {
    std::vector<double> params(grid.axes.size());
    long rem = static_cast<long>(flat);
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      const long size = grid.axes[a].points;
      params[a] = axis_values[a][static_cast<std::size_t>(rem % size)];
      rem /= size;
    }
    LandscapeSample sample;
    sample.params = params;
    sample.energy =
        energy_of(params, hamiltonian, backend, master_seed, static_cast<long>(flat));
    samples[flat] = std::move(sample);
  });
  return samples;
}

VqeResult refine_minimum(const PauliSum& hamiltonian, const BackendConfig& backend,
                         const GridSpec& initial_grid, std::uint64_t master_seed, int rounds,
                         double shrink_factor) {
  const int n = hamiltonian.qubit_count();
  const int param_count = ansatz_param_count(n);
  if (rounds < 1) throw std::invalid_argument("refinement needs at least one round");
  if (!(shrink_factor > 1.0)) {
    throw std::invalid_argument("shrink factor must be greater than one");
  }
  if (static_cast<int>(initial_grid.axes.size()) != param_count) {
    throw std::invalid_argument("grid axis count does not match the ansatz parameter count");
  }
  for (const AxisSpec& axis : initial_grid.axes) {
    if (axis.points < 4) {
      throw std::domain_error("spline fit needs at least 4 points per axis");
    }
  }

  VqeResult result;
  result.mode = backend.mode;
  result.master_seed = master_seed;
  result.rounds_requested = rounds;

  GridSpec grid = initial_grid;
  for (int round = 1; round <= rounds; ++round) {
    const std::uint64_t round_seed =
        derive_seed(master_seed, "round", static_cast<std::uint64_t>(round));
    const std::vector<LandscapeSample> samples =
        scan_landscape(hamiltonian, grid, backend, round_seed);
    const std::vector<double> means = sample_means(samples);

    SplineMinimum minimum;
    double residual = 0.0;
    double next_cell_variation = 0.0;
    std::vector<double> next_lo(param_count), next_hi(param_count);

    if (param_count == 1) {
      const std::vector<double> xs = grid.axes[0].values();
      const CubicSpline spline(xs, means);
      const CubicSpline::Minimum m = spline.minimum();
      minimum.location = {m.x};
      minimum.value = m.value;
      const double half = (grid.axes[0].hi - grid.axes[0].lo) / (2.0 * shrink_factor);
      next_lo[0] = m.x - half;
      next_hi[0] = m.x + half;
      const double spacing = (grid.axes[0].hi - grid.axes[0].lo) / (grid.axes[0].points - 1);
      const double next_spacing = (next_hi[0] - next_lo[0]) / (grid.axes[0].points - 1);
      next_cell_variation =
          predicted_cell_variation_1d(xs, means, next_lo[0], next_hi[0], spacing, next_spacing);
      residual = cross_validation_residual_1d(xs, means);
    } else {
      const std::vector<double> vx = grid.axes[0].values();
      const std::vector<double> vy = grid.axes[1].values();
      Eigen::MatrixXd z(vx.size(), vy.size());
      for (std::size_t i = 0; i < vx.size(); ++i) {
        for (std::size_t j = 0; j < vy.size(); ++j) {
          z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              means[i * vy.size() + j];
        }
      }
      const BicubicSpline surface(vx, vy, z);
      const BicubicSpline::Minimum m = surface.minimum();
      minimum.location = {m.x, m.y};
      minimum.value = m.value;
      std::vector<double> spacing(2), next_spacing(2);
      for (int a = 0; a < 2; ++a) {
        const double half = (grid.axes[a].hi - grid.axes[a].lo) / (2.0 * shrink_factor);
        next_lo[a] = minimum.location[a] - half;
        next_hi[a] = minimum.location[a] + half;
        spacing[a] = (grid.axes[a].hi - grid.axes[a].lo) / (grid.axes[a].points - 1);
        next_spacing[a] = (next_hi[a] - next_lo[a]) / (grid.axes[a].points - 1);
      }
      next_cell_variation =
          predicted_cell_variation_2d(samples, next_lo, next_hi, spacing, next_spacing);
      residual = cross_validation_residual_2d(vx, vy, z);
    }

    result.rounds_completed = round;
    result.final_grid = grid;
    result.final_samples = samples;
    result.best_params = minimum.location;
    result.best_energy = minimum.value;
    result.spline_residual = residual;

    // Statistical error of the measured point nearest the fitted minimum,
    // with axis widths normalising the distance.
    double best_distance = std::numeric_limits<double>::infinity();
    for (const LandscapeSample& sample : samples) {
      double distance = 0.0;
      for (std::size_t a = 0; a < sample.params.size(); ++a) {
        const double width = grid.axes[a].hi - grid.axes[a].lo;
        const double d = (sample.params[a] - minimum.location[a]) / (width > 0 ? width : 1.0);
        distance += d * d;
      }
      if (distance < best_distance) {
        best_distance = distance;
        result.stat_error = sample.energy.std_error;
      }
    }
    result.uncertainty = std::hypot(result.stat_error, result.spline_residual);

    if (round == rounds) break;

    // Noise-floor check: when adjacent knots of the next grid would differ by
    // less energy than a couple of statistical error bars, a further scan
    // would only resolve shot noise. Deterministic backends (exact, or
    // density-matrix evaluation with shots = 0) always run every round.
    const double floor = median_std_error(samples);
    if (backend.shots > 0 && floor > 0.0 &&
        next_cell_variation < kNoiseFloorFactor * floor) {
      break;
    }

    for (int a = 0; a < param_count; ++a) {
      grid.axes[a].lo = next_lo[a];
      grid.axes[a].hi = next_hi[a];
    }
  }
  return result;
}

VqeResult refine_minimum(const PauliSum& hamiltonian, const BackendConfig& backend,
                         std::uint64_t master_seed, int rounds) {
  const GridSpec grid = default_grid(ansatz_param_count(hamiltonian.qubit_count()));
  return refine_minimum(hamiltonian, backend, grid, master_seed, rounds);
}

}  // namespace qdeut
