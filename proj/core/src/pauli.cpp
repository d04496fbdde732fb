#include "qdeut/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qdeut {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int pauli_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
  }
}

// Single-qubit products: result character and phase for a*b.
// Order: I, X, Y, Z.
constexpr char kProduct[4][4] = {
    {'I', 'X', 'Y', 'Z'},
    {'X', 'I', 'Z', 'Y'},
    {'Y', 'Z', 'I', 'X'},
    {'Z', 'Y', 'X', 'I'},
};
// Phase exponent p in i^p for a*b.
constexpr int kPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

std::complex<double> phase_pow_i(int p) {
  switch (p & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void validate_ops(std::string_view ops, int qubit_count) {
  if (static_cast<int>(ops.size()) != qubit_count) {
    throw std::invalid_argument("Pauli string length " + std::to_string(ops.size()) +
                                " does not match qubit count " + std::to_string(qubit_count));
  }
  for (char c : ops) pauli_index(c);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

PauliTerm multiply_terms(const PauliTerm& a, const PauliTerm& b) {
  if (a.ops.size() != b.ops.size()) {
    throw std::invalid_argument("cannot multiply Pauli terms over different qubit counts");
  }
  PauliTerm out;
  out.ops.resize(a.ops.size());
  int phase = 0;
  for (std::size_t q = 0; q < a.ops.size(); ++q) {
    const int ia = pauli_index(a.ops[q]);
    const int ib = pauli_index(b.ops[q]);
    out.ops[q] = kProduct[ia][ib];
    phase += kPhase[ia][ib];
  }
  out.coeff = a.coeff * b.coeff * phase_pow_i(phase);
  return out;
}

PauliSum::PauliSum(int qubit_count) : qubit_count_(qubit_count) {
  if (qubit_count < 1) {
    throw std::invalid_argument("qubit count must be >= 1");
  }
}

void PauliSum::add(std::complex<double> coeff, std::string_view ops) {
  validate_ops(ops, qubit_count_);
  terms_.push_back({coeff, std::string(ops)});
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.qubit_count_ != qubit_count_) {
    throw std::invalid_argument("cannot add Pauli sums over different qubit counts");
  }
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(std::complex<double> scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.qubit_count_ != b.qubit_count_) {
    throw std::invalid_argument("cannot multiply Pauli sums over different qubit counts");
  }
  PauliSum out(a.qubit_count_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      const PauliTerm p = multiply_terms(ta, tb);
      out.terms_.push_back(p);
    }
  }
  return out.simplified();
}

PauliSum PauliSum::simplified(double drop_tol) const {
  std::map<std::string, std::complex<double>> merged;
  for (const auto& t : terms_) merged[t.ops] += t.coeff;
  PauliSum out(qubit_count_);
  for (const auto& [ops, coeff] : merged) {
    if (std::abs(coeff) < drop_tol) continue;
    out.terms_.push_back({coeff, ops});
  }
  return out;
}

double PauliSum::max_imag() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff.imag()));
  return m;
}

bool PauliSum::is_hermitian(double tol) const { return max_imag() <= tol; }

Eigen::MatrixXcd PauliSum::to_matrix() const {
  static const Eigen::Matrix2cd kPauli[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, -kI, kI, 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  const std::size_t dim = std::size_t{1} << qubit_count_;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    // Qubit 0 is the leftmost character and the most significant bit, so each
    // successive character becomes the inner Kronecker factor.
    for (char c : t.ops) {
      const Eigen::MatrixXcd& p = kPauli[pauli_index(c)];
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
          next.block(a * 2, b * 2, 2, 2) = m(a, b) * p;
        }
      }
      m = std::move(next);
    }
    total += t.coeff * m;
  }
  return total;
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += format_double(t.coeff.real());
    out += ' ';
    out += format_double(t.coeff.imag());
    out += ' ';
    out += t.ops;
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text, int qubit_count) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<PauliTerm> parsed;
  int inferred = qubit_count;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    std::string ops;
    if (!(ls >> re >> im >> ops)) {
      throw std::invalid_argument("malformed Pauli term line: '" + line + "'");
    }
    if (inferred < 0) inferred = static_cast<int>(ops.size());
    parsed.push_back({{re, im}, ops});
  }
  if (inferred < 1) {
    throw std::invalid_argument("cannot infer qubit count from empty Pauli text");
  }
  PauliSum out(inferred);
  for (const auto& t : parsed) out.add(t.coeff, t.ops);
  return out;
}

PauliSum jw_lowering(int orbital, int num_qubits) {
  if (orbital < 0 || orbital >= num_qubits) {
    throw std::invalid_argument("orbital index " + std::to_string(orbital) +
                                " out of range for " + std::to_string(num_qubits) + " qubits");
  }
  std::string x_ops(num_qubits, 'I');
  std::string y_ops(num_qubits, 'I');
  for (int j = 0; j < orbital; ++j) {
    x_ops[j] = 'Z';
    y_ops[j] = 'Z';
  }
  x_ops[orbital] = 'X';
  y_ops[orbital] = 'Y';
  PauliSum out(num_qubits);
  out.add(0.5, x_ops);
  out.add(0.5 * kI, y_ops);
  return out;
}

PauliSum jw_raising(int orbital, int num_qubits) {
  PauliSum out = jw_lowering(orbital, num_qubits);
  PauliSum conj(num_qubits);
  for (const auto& t : out.terms()) conj.add(std::conj(t.coeff), t.ops);
  return conj;
}

PauliSum jw_one_body(const Eigen::MatrixXd& coeffs) {
  if (coeffs.rows() != coeffs.cols()) {
    throw std::invalid_argument("one-body coefficient matrix must be square");
  }
  const int n = static_cast<int>(coeffs.rows());
  if ((coeffs - coeffs.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("one-body coefficient matrix must be symmetric");
  }
  PauliSum total(n);
  for (int np = 0; np < n; ++np) {
    for (int nn = 0; nn < n; ++nn) {
      if (coeffs(np, nn) == 0.0) continue;
      PauliSum prod = jw_raising(np, n) * jw_lowering(nn, n);
      prod *= coeffs(np, nn);
      total += prod;
    }
  }
  return total.simplified();
}

}  // namespace qdeut
