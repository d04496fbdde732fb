#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdeut/constants.hpp"

namespace qdeut {

// Order of the finite-volume energy correction used when extrapolating
// oscillator-basis energies to infinite volume.
enum class FitOrder { LO, NLO, N2LO };

std::string to_string(FitOrder order);
FitOrder fit_order_from_string(std::string_view name);

// Effective hard-wall radius (fm) assigned to an oscillator basis of size N.
// The first three sizes use tabulated values; larger bases use
// sqrt((4N + 7) (hbar c)^2 / (m hbar omega)) with m the reduced mass.
double effective_radius(int basis_size, const PhysicsConstants& constants = {});

// Finite-volume energy (MeV) of a bound state with asymptotic momentum `k`
// (fm^-1), asymptotic normalisation `gamma` (fm^-1/2 scale), and shape
// parameter `w2` (fm^3, N2LO only) confined to radius `length` (fm).
double model_energy(FitOrder order, double k, double gamma, double w2, double length,
                    const PhysicsConstants& constants = {});

// One finite-volume input: a basis radius, its energy, and an optional
// 1-sigma uncertainty used for error propagation (0 = exact).
struct ContinuumPoint {
  double length = 0.0;   // fm
  double energy = 0.0;   // MeV
  double uncertainty = 0.0;
};

struct ContinuumFit {
  FitOrder order = FitOrder::LO;
  double k = 0.0;          // fm^-1
  double gamma = 0.0;
  double w2 = 0.0;
  double e_infinity = 0.0;      // MeV, the L -> infinity limit
  double e_infinity_err = 0.0;  // propagated from input uncertainties
  double residual_rms = 0.0;    // MeV
  int iterations = 0;
  std::vector<ContinuumPoint> points;
};

// Fits the model parameters to the given points with a damped Newton
// iteration (Gauss-Newton when overdetermined) using analytic derivatives.
// LO and NLO fit (k, gamma); N2LO also fits w2. Needs at least as many
// points as parameters; throws numeric_error if the iteration fails to
// converge within 200 steps.
ContinuumFit fit_continuum(FitOrder order, const std::vector<ContinuumPoint>& points,
                           const PhysicsConstants& constants = {});

}  // namespace qdeut
