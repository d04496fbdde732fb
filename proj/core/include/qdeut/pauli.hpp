#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qdeut {

// One weighted Pauli string, e.g. 0.5 * "ZXI". The string has exactly one
// character per qubit from {I, X, Y, Z}; qubit 0 is the leftmost character.
struct PauliTerm {
  std::complex<double> coeff;
  std::string ops;
};

// Single-term operator product with the accumulated phase folded into the
// coefficient (XY = iZ and so on, qubit-wise).
PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b);

// Weighted sum of Pauli strings over a fixed qubit count. Canonical form
// (reached via simplified()) merges duplicate strings, drops coefficients
// below a cutoff, and orders terms lexicographically so serialization is
// deterministic.
class PauliSum {
 public:
  explicit PauliSum(int qubit_count);

  int qubit_count() const { return qubit_count_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Appends a term; does not merge duplicates (simplified() does).
  void add(std::complex<double> coeff, std::string_view ops);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(std::complex<double> scale);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  // Canonical form: duplicates merged, |coeff| < drop_tol removed, terms
  // sorted by string. Idempotent.
  PauliSum simplified(double drop_tol = 1e-12) const;

  // Largest |imaginary part| over all coefficients.
  double max_imag() const;

  // True when every coefficient is real within tol (sufficient for a sum of
  // distinct Pauli strings to be Hermitian).
  bool is_hermitian(double tol = 1e-10) const;

  // Dense 2^n x 2^n matrix via Kronecker products.
  Eigen::MatrixXcd to_matrix() const;

  // Text form, one term per line: "<coeff_real> <coeff_imag> <string>".
  // Doubles are printed with enough digits to round-trip bit-exactly.
  std::string to_text() const;

  // Parses the text form. qubit_count < 0 infers the count from the first
  // term's string length.
  static PauliSum from_text(std::string_view text, int qubit_count = -1);

 private:
  int qubit_count_;
  std::vector<PauliTerm> terms_;
};

// Jordan-Wigner image of the annihilation operator for the given orbital:
// (prod_{j<orbital} Z_j) (X + iY)/2 on that qubit. A qubit in |1> means the
// orbital is occupied.
PauliSum jw_lowering(int orbital, int num_qubits);

// Hermitian conjugate of jw_lowering.
PauliSum jw_raising(int orbital, int num_qubits);

// Qubit image of the one-body operator sum_{n',n} M(n',n) a†_{n'} a_n for a
// symmetric real coefficient matrix M. All output coefficients are real to
// 1e-10 by construction.
PauliSum jw_one_body(const Eigen::MatrixXd& coeffs);

}  // namespace qdeut
