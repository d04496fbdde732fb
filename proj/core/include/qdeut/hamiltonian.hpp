#pragma once

#include <Eigen/Dense>

#include "qdeut/constants.hpp"
#include "qdeut/pauli.hpp"

namespace qdeut {

// Kinetic-energy matrix element <n'|T|n> in the s-wave oscillator basis, MeV.
double kinetic_element(int n_prime, int n, const PhysicsConstants& c = {});

// Contact-interaction matrix element <n'|V|n>: v0 on (0,0), zero elsewhere.
double potential_element(int n_prime, int n, const PhysicsConstants& c = {});

// N x N Hamiltonian matrix in the oscillator basis: tridiagonal kinetic part
// plus the single (0,0) potential entry. Throws std::invalid_argument for
// N < 1.
Eigen::MatrixXd build_matrix(int basis_size, const PhysicsConstants& c = {});

// All eigenvalues of build_matrix, ascending.
Eigen::VectorXd exact_spectrum(int basis_size, const PhysicsConstants& c = {});

// Lowest eigenvalue of build_matrix, MeV.
double exact_ground_energy(int basis_size, const PhysicsConstants& c = {});

// Qubit form of the N-orbital Hamiltonian: jw_one_body(build_matrix(N)),
// one qubit per oscillator orbital.
PauliSum qubit_hamiltonian(int basis_size, const PhysicsConstants& c = {});

}  // namespace qdeut
