#include "qdeut/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdeut {

double kinetic_element(int n_prime, int n, const PhysicsConstants& c) {
  if (n < 0 || n_prime < 0) {
    throw std::invalid_argument("oscillator quantum numbers must be >= 0");
  }
  const double half = c.hbar_omega / 2.0;
  if (n_prime == n) return half * (2 * n + 1.5);
  if (n == n_prime + 1) return -half * std::sqrt(n * (n + 0.5));
  if (n == n_prime - 1) return -half * std::sqrt((n + 1) * (n + 1.5));
  return 0.0;
}

double potential_element(int n_prime, int n, const PhysicsConstants& c) {
  if (n < 0 || n_prime < 0) {
    throw std::invalid_argument("oscillator quantum numbers must be >= 0");
  }
  return (n == 0 && n_prime == 0) ? c.v0 : 0.0;
}

Eigen::MatrixXd build_matrix(int basis_size, const PhysicsConstants& c) {
  if (basis_size < 1) {
    throw std::invalid_argument("basis size must be >= 1");
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(basis_size, basis_size);
  for (int np = 0; np < basis_size; ++np) {
    for (int n = 0; n < basis_size; ++n) {
      h(np, n) = kinetic_element(np, n, c) + potential_element(np, n, c);
    }
  }
  return h;
}

Eigen::VectorXd exact_spectrum(int basis_size, const PhysicsConstants& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_matrix(basis_size, c));
  return solver.eigenvalues();
}

double exact_ground_energy(int basis_size, const PhysicsConstants& c) {
  return exact_spectrum(basis_size, c)(0);
}

PauliSum qubit_hamiltonian(int basis_size, const PhysicsConstants& c) {
  return jw_one_body(build_matrix(basis_size, c));
}

}  // namespace qdeut
