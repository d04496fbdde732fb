// Acceptance gate for the deuteron pipeline. Each criterion prints exactly
// one PASS/FAIL line with the measured numbers and its wall time; the
// process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "qdeut/ansatz.hpp"
#include "qdeut/backend.hpp"
#include "qdeut/extrapolation.hpp"
#include "qdeut/hamiltonian.hpp"
#include "qdeut/mitigation.hpp"
#include "qdeut/pauli.hpp"
#include "qdeut/rng.hpp"
#include "qdeut/simulator.hpp"
#include "qdeut/vqe.hpp"

using namespace qdeut;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

int run_criterion(int index, double time_limit_seconds,
                  const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.pass = false;
    outcome.detail = std::string("unexpected exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool pass = outcome.pass;
  std::string detail = outcome.detail;
  if (pass && seconds > time_limit_seconds) {
    pass = false;
    detail += " — but exceeded the time budget";
  }
  std::printf("criterion %d: %s  %s [%.2f s < %g s]\n", index, pass ? "PASS" : "FAIL",
              detail.c_str(), seconds, time_limit_seconds);
  for (const std::string& note : outcome.notes) {
    std::printf("  note: %s\n", note.c_str());
  }
  std::fflush(stdout);
  return pass ? 0 : 1;
}

double coefficient_of(const PauliSum& sum, const std::string& ops) {
  for (const PauliTerm& term : sum.terms()) {
    if (term.ops == ops) return term.coeff.real();
  }
  return 0.0;
}

std::string run_cli_capture(const std::string& args, int& status) {
  const std::string command =
      std::string("\"") + QDEUT_CLI_PATH + "\" " + args + " 2>/dev/null";
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return output;
  }
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
  const int raw = pclose(pipe);
  status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return output;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[320];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

// --- criterion bodies -------------------------------------------------------

Outcome hamiltonian_coefficients() {
  const PauliSum h2 = qubit_hamiltonian(2).simplified();
  const PauliSum h3 = qubit_hamiltonian(3).simplified();
  const std::vector<std::pair<std::string, double>> expected2 = {
      {"II", 5.906709}, {"ZI", 0.218291}, {"IZ", -6.125}, {"XX", -2.143304},
      {"YY", -2.143304}};
  const std::vector<std::pair<std::string, double>> expected3 = {
      {"ZII", 0.218291}, {"IZI", -6.125}, {"IIZ", -9.625}, {"XXI", -2.143304},
      {"YYI", -2.143304}, {"IXX", -3.913119}, {"IYY", -3.913119}};
  double max_dev = 0.0;
  for (const auto& [ops, value] : expected2) {
    max_dev = std::max(max_dev, std::abs(coefficient_of(h2, ops) - value));
  }
  for (const auto& [ops, value] : expected3) {
    max_dev = std::max(max_dev, std::abs(coefficient_of(h3, ops) - value));
  }
  Outcome out;
  out.pass = max_dev < 1e-6;
  out.detail = fmt("two- and three-state coefficients, max deviation %.2e (limit 1e-6)",
                   max_dev);
  return out;
}

Outcome exact_diagonalization() {
  const double e1 = exact_ground_energy(1);
  const double e2 = exact_ground_energy(2);
  const double e3 = exact_ground_energy(3);
  const double d1 = std::abs(e1 - -0.436);
  const double d2 = std::abs(e2 - -1.749);
  const double d3 = std::abs(e3 - -2.046);
  Outcome out;
  out.pass = d1 < 1e-3 && d2 < 1e-3 && d3 < 1e-3;
  out.detail = fmt("E = %.6f / %.6f / %.6f vs -0.436 / -1.749 / -2.046 (limit 1e-3)",
                   e1, e2, e3);
  return out;
}

Outcome noiseless_minimisation() {
  BackendConfig backend;  // exact
  const VqeResult r2 = refine_minimum(qubit_hamiltonian(2), backend, 1);
  const VqeResult r3 = refine_minimum(qubit_hamiltonian(3), backend, 1);
  const double d2 = std::abs(r2.best_energy - exact_ground_energy(2));
  const double d3 = std::abs(r3.best_energy - exact_ground_energy(3));
  Outcome out;
  out.pass = d2 < 1e-4 && d3 < 1e-4;
  out.detail = fmt("refined minima off by %.2e / %.2e (limit 1e-4)", d2, d3);
  return out;
}

Outcome sampled_minimisation() {
  const PauliSum h2 = qubit_hamiltonian(2);
  const double truth = exact_ground_energy(2);
  BackendConfig backend;
  backend.mode = Mode::sampled;
  backend.shots = 8192;
  double err_sum = 0.0;
  int covered = 0;
  const int seeds = 10;
  for (int seed = 1; seed <= seeds; ++seed) {
    const VqeResult r = refine_minimum(h2, backend, seed);
    const double err = r.best_energy - truth;
    err_sum += err;
    if (std::abs(err) <= r.uncertainty) ++covered;
  }
  const double mean_err = err_sum / seeds;
  Outcome out;
  out.pass = std::abs(mean_err) < 0.05 && covered >= 8;
  out.detail = fmt("8192 shots, 10 seeds: mean error %+.4f (limit 0.05), "
                   "quoted uncertainty covered the truth in %.0f/10 seeds (need 8)",
                   mean_err, static_cast<double>(covered));
  return out;
}

Outcome mitigated_minimisation() {
  const PauliSum h3 = qubit_hamiltonian(3);
  const double truth = exact_ground_energy(3);

  BackendConfig series;
  series.mode = Mode::noisy_zne;
  series.shots = 0;
  series.noise.cnot_epsilon = 0.02;
  const VqeResult exact_series = refine_minimum(h3, series, 1);
  const double exact_err = std::abs(exact_series.best_energy - truth);

  BackendConfig shot;
  shot.mode = Mode::noisy_zne;
  shot.shots = 8192;
  shot.iterations = 10;
  shot.noise.cnot_epsilon = 0.02;
  const VqeResult sampled = refine_minimum(h3, shot, 1);
  const double sampled_err = std::abs(sampled.best_energy - truth);

  Outcome out;
  out.pass = exact_err <= 0.02 && sampled_err <= 0.06;
  out.detail = fmt("eps 0.02: exact-series minimum %.6f (|err| %.4f, limit 0.02), "
                   "sampled minimum %.6f (|err| %.4f, limit 0.06)",
                   exact_series.best_energy, exact_err, sampled.best_energy, sampled_err);

  // Diagnostic: the same pipeline at weaker noise, to show the miss above is
  // the quadratic residual of a straight-line fit through a geometric decay,
  // not an implementation fault.
  BackendConfig weak = series;
  weak.noise.cnot_epsilon = 0.005;
  const VqeResult diagnostic = refine_minimum(h3, weak, 1);
  const double weak_err = std::abs(diagnostic.best_energy - truth);
  out.notes.push_back(
      fmt("at eps = 0.005 the exact-series minimum is %.6f (|err| %.4f, within 0.02): "
          "the linear-in-scale fit leaves a residual growing as eps^2",
          diagnostic.best_energy, weak_err));
  return out;
}

Outcome continuum_extrapolation() {
  const auto point = [](int n, double energy) {
    return ContinuumPoint{effective_radius(n), energy, 0.0};
  };
  const double e1 = exact_ground_energy(1);
  const double e2 = exact_ground_energy(2);
  const double e3 = exact_ground_energy(3);
  const std::vector<ContinuumPoint> two = {point(1, e1), point(2, e2)};
  const std::vector<ContinuumPoint> three = {point(1, e1), point(2, e2), point(3, e3)};

  struct Case {
    FitOrder order;
    const std::vector<ContinuumPoint>& points;
    double reference;
  };
  const std::vector<Case> cases = {{FitOrder::LO, two, -2.39},
                                   {FitOrder::NLO, two, -2.19},
                                   {FitOrder::LO, three, -2.33},
                                   {FitOrder::NLO, three, -2.20},
                                   {FitOrder::N2LO, three, -2.21}};
  double max_dev = 0.0;
  std::ostringstream values;
  for (const Case& c : cases) {
    const ContinuumFit fit = fit_continuum(c.order, c.points);
    max_dev = std::max(max_dev, std::abs(fit.e_infinity - c.reference));
    values << ' ' << fmt("%.3f", fit.e_infinity);
  }
  Outcome out;
  out.pass = max_dev < 0.01;
  out.detail = "extrapolated energies" + values.str() +
               fmt(" vs -2.39 -2.19 -2.33 -2.20 -2.21, max deviation %.4f (limit 0.01)",
                   max_dev);
  return out;
}

Outcome end_to_end_table() {
  int status = -1;
  const std::string output = run_cli_capture("table1 --seed 1 --format json", status);
  Outcome out;
  if (status != 0) {
    out.detail = fmt("table command exited with status %.0f", status);
    return out;
  }
  const json doc = json::parse(output, nullptr, false);
  if (doc.is_discarded()) {
    out.detail = "table command produced unparseable output";
    return out;
  }
  for (const auto& row : doc.at("rows")) {
    if (row.at("source") == "quantum" && row.at("basis_size") == 2) {
      const double nlo = row.at("nlo").at("value").get<double>();
      const double deviation = std::abs(nlo - -2.22) / 2.22;
      out.pass = deviation <= 0.02;
      out.detail = fmt("simulated-quantum two-state run extrapolates to %.4f, "
                       "%.2f%% from -2.22 (limit 2%%)",
                       nlo, 100.0 * deviation);
      return out;
    }
  }
  out.detail = "table output is missing the simulated-quantum two-state row";
  return out;
}

Outcome property_suites() {
  std::vector<std::string> failures;

  // One-body operator mapping: the qubit operator restricted to one-hot
  // states reproduces the coefficient matrix, and the vacuum is untouched.
  {
    std::mt19937_64 eng(17);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 3; ++trial) {
      const int n = 3;
      Eigen::MatrixXd m(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          m(i, j) = gauss(eng);
          m(j, i) = m(i, j);
        }
      }
      const Eigen::MatrixXcd full = jw_one_body(m).to_matrix();
      const auto hot = [&](int orbital) { return std::size_t{1} << (n - 1 - orbital); };
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (std::abs(full(hot(i), hot(j)) - std::complex<double>(m(i, j))) > 1e-10) {
            failures.push_back("one-body mapping block mismatch");
          }
        }
      }
      if (std::abs(full(0, 0)) > 1e-10) failures.push_back("vacuum energy nonzero");
    }
  }

  // Noise channel: trace preserved, state stays positive semidefinite.
  {
    NoiseModel noise;
    noise.cnot_epsilon = 0.15;
    std::mt19937_64 eng(23);
    std::uniform_real_distribution<double> angle(-3.1, 3.1);
    for (int trial = 0; trial < 2; ++trial) {
      Circuit c(3);
      c.push(RotY{0, angle(eng)});
      c.push(Cnot{0, 1});
      c.push(Hadamard{2});
      c.push(Cnot{1, 2});
      c.push(RotY{1, angle(eng)});
      c.push(Cnot{2, 0});
      const DensityMatrix rho = run_noisy(c, noise);
      if (std::abs(rho.trace().real() - 1.0) > 1e-10) failures.push_back("trace drift");
      const Eigen::VectorXd eigs =
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues();
      if (eigs.minCoeff() < -1e-10) failures.push_back("negative eigenvalue");
    }
  }

  // Readout: applying the confusion then its inverse is the identity.
  {
    std::mt19937_64 eng(31);
    const std::vector<ReadoutErrors> readout = {{0.11, 0.04}, {0.06, 0.09}};
    std::vector<double> probs(4);
    double total = 0.0;
    for (double& p : probs) {
      p = uniform_unit(eng);
      total += p;
    }
    for (double& p : probs) p /= total;
    std::vector<double> observed = probs;
    for (int q = 0; q < 2; ++q) {
      const double e0 = readout[q].e0, e1 = readout[q].e1;
      const std::size_t stride = std::size_t{1} << (1 - q);
      for (std::size_t base = 0; base < 4; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
          const double p0 = observed[base + off];
          const double p1 = observed[base + off + stride];
          observed[base + off] = (1 - e0) * p0 + e1 * p1;
          observed[base + off + stride] = e0 * p0 + (1 - e1) * p1;
        }
      }
    }
    correct_distribution(observed, readout);
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(observed[i] - probs[i]) > 1e-10) {
        failures.push_back("readout round trip drift");
      }
    }
  }

  // Noise scaling: repeating CNOTs an odd number of times is a logical no-op.
  {
    const Circuit base = decompose_cry(ansatz_circuit_n3(1.1, -0.7));
    const Amplitudes reference = run_pure(base);
    const Amplitudes scaled = run_pure(scale_noise(base, 5));
    if ((scaled - reference).cwiseAbs().maxCoeff() > 1e-12) {
      failures.push_back("scaled circuit is not unitarily equivalent");
    }
  }

  // Continuum model: synthetic data round-trips through the fit.
  {
    const double k = 0.23, gamma = std::sqrt(2.0 * k);
    std::vector<ContinuumPoint> pts;
    for (const int n : {1, 2, 3}) {
      const double radius = effective_radius(n);
      pts.push_back({radius, model_energy(FitOrder::NLO, k, gamma, 0.0, radius), 0.0});
    }
    const ContinuumFit fit = fit_continuum(FitOrder::NLO, pts);
    if (std::abs(fit.k - k) > 1e-6 * k) failures.push_back("fit failed to recover k");
  }

  Outcome out;
  out.pass = failures.empty();
  if (out.pass) {
    out.detail = "mapping equivalence, channel trace/positivity, readout round trip, "
                 "scaling invariance, and fit round trip all hold";
  } else {
    out.detail = "failed:";
    for (const std::string& f : failures) out.detail += " [" + f + "]";
  }
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion(1, 1.0, hamiltonian_coefficients);
  failures += run_criterion(2, 1.0, exact_diagonalization);
  failures += run_criterion(3, 5.0, noiseless_minimisation);
  failures += run_criterion(4, 30.0, sampled_minimisation);
  failures += run_criterion(5, 60.0, mitigated_minimisation);
  failures += run_criterion(6, 1.0, continuum_extrapolation);
  failures += run_criterion(7, 60.0, end_to_end_table);
  failures += run_criterion(8, 30.0, property_suites);
  if (failures == 0) {
    std::printf("all acceptance criteria hold\n");
  } else {
    std::printf("%d criterion/criteria failed\n", failures);
  }
  return failures;
}
