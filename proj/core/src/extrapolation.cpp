#include "qdeut/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "qdeut/errors.hpp"

namespace qdeut {

namespace {

// Tabulated effective radii (fm) for the three smallest bases.
constexpr double kSmallBasisRadius[] = {9.14, 11.45, 13.38};

struct ModelValue {
  double energy = 0.0;
  // Derivatives with respect to (k, gamma, w2).
  double dk = 0.0;
  double dgamma = 0.0;
  double dw2 = 0.0;
};

ModelValue evaluate_model(FitOrder order, double k, double gamma, double w2, double length,
                          const PhysicsConstants& constants) {
  if (!(k > 0.0)) throw std::invalid_argument("asymptotic momentum k must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("confinement radius must be positive");

  const double hbar_c = constants.hbar_c;
  const double mass = constants.reduced_mass();
  const double a_const = hbar_c * hbar_c / mass;  // MeV fm^2

  const double g2 = gamma * gamma;
  const double g3 = g2 * gamma;
  const double g4 = g2 * g2;
  const double e2 = std::exp(-2.0 * k * length);
  const double e4 = e2 * e2;

  const double p = 0.5 * a_const * k * k;
  const double dp_dk = a_const * k;

  const bool nlo = order != FitOrder::LO;
  const bool n2lo = order == FitOrder::N2LO;

  double c = 1.0 - (2.0 * g2 / k) * e2;
  double dc_dk = 2.0 * g2 * e2 * (1.0 / (k * k) + 2.0 * length / k);
  double dc_dgamma = -(4.0 * gamma / k) * e2;
  if (nlo) {
    c -= (4.0 * g4 * length / k) * e4;
    dc_dk += 4.0 * g4 * length * e4 * (1.0 / (k * k) + 4.0 * length / k);
    dc_dgamma -= (16.0 * g3 * length / k) * e4;
  }

  double s = 0.0, ds_dk = 0.0, ds_dgamma = 0.0, ds_dw2 = 0.0;
  if (n2lo) {
    const double g = 1.0 - g2 / k - g4 / (4.0 * k * k) + 2.0 * w2 * k * g4;
    const double dg_dk = g2 / (k * k) + g4 / (2.0 * k * k * k) + 2.0 * w2 * g4;
    const double dg_dgamma = -2.0 * gamma / k - g3 / (k * k) + 8.0 * w2 * k * g3;
    s = a_const * k * g2 * g * e4;
    ds_dk = a_const * g2 * e4 * (g + k * dg_dk - 4.0 * length * k * g);
    ds_dgamma = a_const * k * e4 * (2.0 * gamma * g + g2 * dg_dgamma);
    ds_dw2 = 2.0 * a_const * k * k * g4 * g2 * e4;
  }

  ModelValue value;
  value.energy = -p * c + s;
  value.dk = -(dp_dk * c + p * dc_dk) + ds_dk;
  value.dgamma = -p * dc_dgamma + ds_dgamma;
  value.dw2 = ds_dw2;
  return value;
}

int parameter_count(FitOrder order) { return order == FitOrder::N2LO ? 3 : 2; }

double sum_squares(const Eigen::VectorXd& v) { return v.squaredNorm(); }

// Core solver for fixed input energies; returns (k, gamma, w2, residual_rms,
// iterations used).
struct SolveResult {
  double k = 0.0;
  double gamma = 0.0;
  double w2 = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
};

SolveResult solve_fit(FitOrder order, const std::vector<ContinuumPoint>& points,
                      const std::vector<double>& energies, const PhysicsConstants& constants) {
  const int params = parameter_count(order);
  const int count = static_cast<int>(points.size());

  // Initial guess: momentum matching the deepest input energy, a typical
  // bound-state normalisation, and no shape correction.
  double deepest = energies.front();
  for (const double e : energies) deepest = std::min(deepest, e);
  const double mass = constants.reduced_mass();
  double k = std::sqrt(std::max(1e-8, 2.0 * mass * std::abs(deepest))) / constants.hbar_c;
  double gamma = std::sqrt(2.0 * k);
  double w2 = 0.0;

  const auto residuals = [&](double kk, double gg, double ww, Eigen::VectorXd& r,
                             Eigen::MatrixXd* jac) {
    for (int i = 0; i < count; ++i) {
      const ModelValue m = evaluate_model(order, kk, gg, ww, points[i].length, constants);
      r(i) = m.energy - energies[i];
      if (jac) {
        (*jac)(i, 0) = m.dk;
        (*jac)(i, 1) = m.dgamma;
        if (params == 3) (*jac)(i, 2) = m.dw2;
      }
    }
  };

  Eigen::VectorXd r(count);
  Eigen::MatrixXd jac(count, params);
  residuals(k, gamma, w2, r, &jac);
  double cost = sum_squares(r);

  constexpr int kMaxIterations = 200;
  int iteration = 0;
  for (; iteration < kMaxIterations; ++iteration) {
    // Newton (square) / Gauss-Newton (overdetermined) step.
    Eigen::VectorXd step(params);
    if (count == params) {
      step = jac.partialPivLu().solve(-r);
    } else {
      step = jac.colPivHouseholderQr().solve(-r);
    }
    if (!step.allFinite()) {
      throw numeric_error("continuum fit produced a non-finite step");
    }

    // Backtracking line search; reject candidates with non-positive momentum.
    double scale = 1.0;
    bool accepted = false;
    double nk = k, ngamma = gamma, nw2 = w2, ncost = cost;
    Eigen::VectorXd nr(count);
    for (int half = 0; half < 30; ++half, scale *= 0.5) {
      const double ck = k + scale * step(0);
      const double cgamma = gamma + scale * step(1);
      const double cw2 = params == 3 ? w2 + scale * step(2) : w2;
      if (ck <= 1e-6) continue;
      residuals(ck, cgamma, cw2, nr, nullptr);
      const double candidate_cost = sum_squares(nr);
      if (candidate_cost < cost) {
        nk = ck;
        ngamma = cgamma;
        nw2 = cw2;
        ncost = candidate_cost;
        accepted = true;
        break;
      }
    }

    const double step_size = scale * step.norm();
    if (!accepted) break;  // no descent direction left: converged or stuck

    k = nk;
    gamma = ngamma;
    w2 = nw2;
    cost = ncost;
    residuals(k, gamma, w2, r, &jac);

    const double scale_ref = 1.0 + std::abs(k) + std::abs(gamma) + std::abs(w2);
    if (step_size < 1e-13 * scale_ref) break;
    if (count == params && r.lpNorm<Eigen::Infinity>() < 1e-10) break;
  }

  if (iteration >= kMaxIterations) {
    std::ostringstream msg;
    msg << "continuum fit did not converge within " << kMaxIterations
        << " iterations (last k=" << k << ", gamma=" << gamma << ", w2=" << w2 << ")";
    throw numeric_error(msg.str());
  }

  // An exactly determined system must actually solve the equations.
  if (count == params && r.lpNorm<Eigen::Infinity>() > 1e-8) {
    std::ostringstream msg;
    msg << "continuum fit stalled with residual " << r.lpNorm<Eigen::Infinity>()
        << " MeV (last k=" << k << ", gamma=" << gamma << ", w2=" << w2 << ")";
    throw numeric_error(msg.str());
  }

  SolveResult result;
  result.k = k;
  result.gamma = std::abs(gamma);  // only even powers enter the model
  result.w2 = w2;
  result.residual_rms = std::sqrt(cost / count);
  result.iterations = iteration + 1;
  return result;
}

double infinite_volume_energy(double k, const PhysicsConstants& constants) {
  const double pk = constants.hbar_c * k;
  return -pk * pk / (2.0 * constants.reduced_mass());
}

}  // namespace

std::string to_string(FitOrder order) {
  switch (order) {
    case FitOrder::LO: return "LO";
    case FitOrder::NLO: return "NLO";
    case FitOrder::N2LO: return "N2LO";
  }
  throw std::logic_error("unhandled fit order");
}

FitOrder fit_order_from_string(std::string_view name) {
  if (name == "LO") return FitOrder::LO;
  if (name == "NLO") return FitOrder::NLO;
  if (name == "N2LO") return FitOrder::N2LO;
  throw std::invalid_argument("unknown fit order: " + std::string(name) +
                              " (expected LO, NLO, or N2LO)");
}

double effective_radius(int basis_size, const PhysicsConstants& constants) {
  if (basis_size < 1) throw std::invalid_argument("basis size must be >= 1");
  if (basis_size <= 3) return kSmallBasisRadius[basis_size - 1];
  const double hc2 = constants.hbar_c * constants.hbar_c;
  return std::sqrt((4.0 * basis_size + 7.0) * hc2 /
                   (constants.reduced_mass() * constants.hbar_omega));
}

double model_energy(FitOrder order, double k, double gamma, double w2, double length,
                    const PhysicsConstants& constants) {
  return evaluate_model(order, k, gamma, w2, length, constants).energy;
}

ContinuumFit fit_continuum(FitOrder order, const std::vector<ContinuumPoint>& points,
                           const PhysicsConstants& constants) {
  const int params = parameter_count(order);
  if (static_cast<int>(points.size()) < params) {
    std::ostringstream msg;
    msg << to_string(order) << " fit needs at least " << params << " energies, got "
        << points.size();
    throw std::invalid_argument(msg.str());
  }
  for (const ContinuumPoint& p : points) {
    if (!(p.length > 0.0)) throw std::invalid_argument("confinement radius must be positive");
  }

  std::vector<double> energies;
  energies.reserve(points.size());
  for (const ContinuumPoint& p : points) energies.push_back(p.energy);

  const SolveResult central = solve_fit(order, points, energies, constants);

  ContinuumFit fit;
  fit.order = order;
  fit.k = central.k;
  fit.gamma = central.gamma;
  fit.w2 = central.w2;
  fit.e_infinity = infinite_volume_energy(central.k, constants);
  fit.residual_rms = central.residual_rms;
  fit.iterations = central.iterations;
  fit.points = points;

  // Propagate input uncertainties by refitting at every sign corner of the
  // error box and taking half the spread of the extrapolated energies.
  bool any_uncertainty = false;
  for (const ContinuumPoint& p : points) {
    if (p.uncertainty > 0.0) any_uncertainty = true;
  }
  if (any_uncertainty) {
    const std::size_t corners = std::size_t{1} << points.size();
    double low = fit.e_infinity;
    double high = fit.e_infinity;
    for (std::size_t corner = 0; corner < corners; ++corner) {
      std::vector<double> shifted = energies;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double sign = (corner >> i) & 1U ? 1.0 : -1.0;
        shifted[i] += sign * points[i].uncertainty;
      }
      const SolveResult alt = solve_fit(order, points, shifted, constants);
      const double e = infinite_volume_energy(alt.k, constants);
      low = std::min(low, e);
      high = std::max(high, e);
    }
    fit.e_infinity_err = 0.5 * (high - low);
  }
  return fit;
}

}  // namespace qdeut
