#include <complex>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "qdeut/pauli.hpp"

using namespace qdeut;
using namespace std::complex_literals;

namespace {

const PauliTerm* find_term(const PauliSum& sum, const std::string& ops) {
  for (const PauliTerm& term : sum.terms()) {
    if (term.ops == ops) return &term;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("single-qubit products carry the Levi-Civita phases") {
  // XY = iZ, YZ = iX, ZX = iY; reversed order flips the sign.
  auto prod = [](const std::string& a, const std::string& b) {
    return multiply_terms({1.0, a}, {1.0, b});
  };
  CHECK(prod("X", "Y").ops == "Z");
  CHECK(prod("X", "Y").coeff == 1.0i);
  CHECK(prod("Y", "X").coeff == -1.0i);
  CHECK(prod("Y", "Z").ops == "X");
  CHECK(prod("Y", "Z").coeff == 1.0i);
  CHECK(prod("Z", "X").ops == "Y");
  CHECK(prod("Z", "X").coeff == 1.0i);
  CHECK(prod("X", "X").ops == "I");
  CHECK(prod("X", "X").coeff == 1.0);
  CHECK(prod("I", "Y").ops == "Y");
}

TEST_CASE("multi-qubit products multiply the per-qubit phases") {
  const PauliTerm xx{2.0, "XX"};
  const PauliTerm yy{3.0, "YY"};
  const PauliTerm r = multiply_terms(xx, yy);
  // (X*Y)(X*Y) = (iZ)(iZ) = -ZZ, coefficient 2*3 = 6.
  CHECK(r.ops == "ZZ");
  CHECK(r.coeff.real() == doctest::Approx(-6.0).epsilon(1e-15));
  CHECK(r.coeff.imag() == 0.0);
}

TEST_CASE("simplified merges, drops, and sorts canonically") {
  PauliSum sum(2);
  sum.add(1.0, "ZI");
  sum.add(0.5, "XX");
  sum.add(2.0, "ZI");
  sum.add(1e-15, "YY");
  sum.add(-1.0, "II");
  const PauliSum s = sum.simplified();
  REQUIRE(s.terms().size() == 3);
  // Lexicographic with I < X < Y < Z: II, XX, ZI.
  CHECK(s.terms()[0].ops == "II");
  CHECK(s.terms()[1].ops == "XX");
  CHECK(s.terms()[2].ops == "ZI");
  CHECK(s.terms()[2].coeff.real() == doctest::Approx(3.0));
  CHECK(s.simplified().terms().size() == 3);  // idempotent
}

TEST_CASE("text serialization round-trips bit-exactly") {
  PauliSum sum(3);
  sum.add(std::complex<double>(1.0 / 3.0, -2.0 / 7.0), "XYZ");
  sum.add(std::complex<double>(-5.68658111, 0.0), "ZII");
  sum.add(std::complex<double>(1e-300, 1.0), "IIY");
  const PauliSum back = PauliSum::from_text(sum.simplified().to_text());
  const PauliSum canon = sum.simplified();
  REQUIRE(back.terms().size() == canon.terms().size());
  CHECK(back.qubit_count() == 3);
  for (std::size_t i = 0; i < canon.terms().size(); ++i) {
    CHECK(back.terms()[i].ops == canon.terms()[i].ops);
    // Bitwise equality is the contract, not approximate equality.
    CHECK(back.terms()[i].coeff.real() == canon.terms()[i].coeff.real());
    CHECK(back.terms()[i].coeff.imag() == canon.terms()[i].coeff.imag());
  }
}

TEST_CASE("from_text rejects malformed input") {
  CHECK_THROWS_AS(PauliSum::from_text("1.0 0.0 XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliSum::from_text("1.0 XX"), std::invalid_argument);
  CHECK_THROWS_AS(PauliSum::from_text("1.0 0.0 XX\n1.0 0.0 XXX"), std::invalid_argument);
}

TEST_CASE("to_matrix uses qubit 0 as the most significant bit") {
  PauliSum zi(2);
  zi.add(1.0, "ZI");
  const Eigen::MatrixXcd m = zi.to_matrix();
  REQUIRE(m.rows() == 4);
  // |00>, |01> have qubit 0 in |0> -> eigenvalue +1; |10>, |11> -> -1.
  CHECK(m(0, 0).real() == doctest::Approx(1.0));
  CHECK(m(1, 1).real() == doctest::Approx(1.0));
  CHECK(m(2, 2).real() == doctest::Approx(-1.0));
  CHECK(m(3, 3).real() == doctest::Approx(-1.0));

  PauliSum ix(2);
  ix.add(1.0, "IX");
  const Eigen::MatrixXcd x = ix.to_matrix();
  CHECK(x(0, 1).real() == doctest::Approx(1.0));  // flips qubit 1 (LSB)
  CHECK(x(2, 3).real() == doctest::Approx(1.0));
}

TEST_CASE("hermiticity detection") {
  PauliSum sum(1);
  sum.add(std::complex<double>(1.0, 0.0), "X");
  CHECK(sum.is_hermitian());
  sum.add(std::complex<double>(0.0, 0.5), "Z");
  CHECK_FALSE(sum.is_hermitian());
  CHECK(sum.max_imag() == doctest::Approx(0.5));
}

TEST_CASE("jw_lowering without a Z string") {
  // Orbital 0 of 1: (X + iY)/2.
  const PauliSum low = jw_lowering(0, 1).simplified();
  const PauliTerm* x = find_term(low, "X");
  const PauliTerm* y = find_term(low, "Y");
  REQUIRE(x != nullptr);
  REQUIRE(y != nullptr);
  CHECK(x->coeff.real() == doctest::Approx(0.5));
  CHECK(x->coeff.imag() == doctest::Approx(0.0));
  CHECK(y->coeff.real() == doctest::Approx(0.0));
  CHECK(y->coeff.imag() == doctest::Approx(0.5));
}

TEST_CASE("jw_lowering threads the Z string with positive sign") {
  // Orbital 1 of 2: Z_0 (X_1 + i Y_1)/2 = +0.5 ZX + 0.5i ZY.  The positive
  // sign is what reproduces the pinned two- and three-orbital Hamiltonian
  // coefficients; a negated string would flip the hopping terms' sign.
  const PauliSum low = jw_lowering(1, 2).simplified();
  const PauliTerm* zx = find_term(low, "ZX");
  const PauliTerm* zy = find_term(low, "ZY");
  REQUIRE(zx != nullptr);
  REQUIRE(zy != nullptr);
  CHECK(zx->coeff.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(zx->coeff.imag() == doctest::Approx(0.0));
  CHECK(zy->coeff.real() == doctest::Approx(0.0));
  CHECK(zy->coeff.imag() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("jw_raising is the adjoint of jw_lowering") {
  const PauliSum low = jw_lowering(2, 4).simplified();
  const PauliSum high = jw_raising(2, 4).simplified();
  REQUIRE(low.terms().size() == high.terms().size());
  for (std::size_t i = 0; i < low.terms().size(); ++i) {
    CHECK(high.terms()[i].ops == low.terms()[i].ops);
    CHECK(high.terms()[i].coeff.real() == doctest::Approx(low.terms()[i].coeff.real()));
    CHECK(high.terms()[i].coeff.imag() == doctest::Approx(-low.terms()[i].coeff.imag()));
  }
}

TEST_CASE("number operator image") {
  // a†_0 a_0 on one qubit = (I - Z)/2.
  const PauliSum n0 = (jw_raising(0, 1) * jw_lowering(0, 1)).simplified();
  const PauliTerm* i = find_term(n0, "I");
  const PauliTerm* z = find_term(n0, "Z");
  REQUIRE(i != nullptr);
  REQUIRE(z != nullptr);
  CHECK(i->coeff.real() == doctest::Approx(0.5));
  CHECK(z->coeff.real() == doctest::Approx(-0.5));
}

TEST_CASE("jw_one_body has real coefficients and reproduces the matrix on the "
          "one-particle subspace") {
  std::mt19937_64 eng(20240817);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int n = 2; n <= 5; ++n) {
    Eigen::MatrixXd m(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = r; c < n; ++c) {
        m(r, c) = dist(eng);
        m(c, r) = m(r, c);
      }
    }
    const PauliSum image = jw_one_body(m);
    CHECK(image.max_imag() < 1e-10);
    const Eigen::MatrixXcd dense = image.to_matrix();
    // Basis state with only orbital k occupied: index has bit (n-1-k) set.
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const auto row = std::size_t{1} << (n - 1 - j);
        const auto col = std::size_t{1} << (n - 1 - k);
        CHECK(dense(row, col).real() == doctest::Approx(m(j, k)).epsilon(1e-10));
        CHECK(std::abs(dense(row, col).imag()) < 1e-10);
      }
    }
    // The vacuum stays untouched: one-body strings never create particles
    // from nothing.
    CHECK(std::abs(dense(0, 0)) < 1e-10);
  }
}

TEST_CASE("jw_one_body rejects non-square and asymmetric input") {
  Eigen::MatrixXd bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(jw_one_body(bad), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(jw_one_body(asym), std::invalid_argument);
}
