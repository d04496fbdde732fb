#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qdeut/extrapolation.hpp"
#include "qdeut/mitigation.hpp"
#include "qdeut/pauli.hpp"
#include "qdeut/simulator.hpp"
#include "qdeut/vqe.hpp"

namespace qdeut {

// Full-precision decimal form of a double ("%.17g"): round-trips bit-exactly.
std::string format_full(double value);

// Lower-case column label of a Pauli string: "ZI" -> "z0", "IXX" -> "x1x2".
std::string term_label(std::string_view ops);

// Presentation order for the non-identity terms of a Hamiltonian: fewest
// non-identity factors first, then by first acting qubit, then by operator
// letter. Returns indices into the canonical (lexicographic) term list.
// For the two-qubit Hamiltonian this yields z0, z1, x0x1, y0y1.
std::vector<std::size_t> presentation_order(const std::vector<std::string>& ops);

// --- hamiltonian -----------------------------------------------------------

std::string hamiltonian_text(const PauliSum& sum);
std::string hamiltonian_csv(const Eigen::MatrixXd& matrix, const PauliSum& sum);
std::string hamiltonian_json(int basis_size, const Eigen::MatrixXd& matrix, const PauliSum& sum);

// --- exact spectrum --------------------------------------------------------

std::string spectrum_text(int basis_size, const std::vector<double>& energies);
std::string spectrum_csv(const std::vector<double>& energies);
std::string spectrum_json(int basis_size, const std::vector<double>& energies);

// --- landscape scan --------------------------------------------------------

struct ScanReport {
  std::vector<std::string> param_names;
  std::vector<std::string> term_labels;  // presentation order
  struct Row {
    std::vector<double> params;
    std::vector<ExpectationEstimate> terms;  // presentation order
    ExpectationEstimate energy;
  };
  std::vector<Row> rows;
};

std::string scan_csv(const ScanReport& report);
std::string scan_json(const ScanReport& report);

// --- minimisation ----------------------------------------------------------

std::string vqe_text(const VqeResult& result, const std::vector<std::string>& param_names);
std::string vqe_csv(const VqeResult& result, const std::vector<std::string>& param_names);
std::string vqe_json(const VqeResult& result, const std::vector<std::string>& param_names);

// --- zero-noise extrapolation ----------------------------------------------

struct ZneReport {
  double cnot_epsilon = 0.0;
  long shots = 0;
  int iterations = 0;
  std::vector<double> params;
  std::vector<std::string> param_names;
  ZneEnergy result;
  double unmitigated_energy = 0.0;  // plain noisy evaluation at the same point
  double noiseless_energy = 0.0;    // exact statevector evaluation
};

std::string zne_text(const ZneReport& report);
std::string zne_csv(const ZneReport& report);
std::string zne_json(const ZneReport& report);

// --- continuum extrapolation -----------------------------------------------

std::string extrapolation_text(const std::vector<ContinuumFit>& fits);
std::string extrapolation_csv(const std::vector<ContinuumFit>& fits);
std::string extrapolation_json(const std::vector<ContinuumFit>& fits);

// --- energy table ----------------------------------------------------------

struct Table1Entry {
  bool present = false;
  double value = 0.0;
  double error = 0.0;  // 0 = exact / not quoted
};

struct Table1Row {
  std::string source;  // "exact" or "quantum"
  int basis_size = 0;
  Table1Entry e_n, lo, nlo, n2lo;                  // computed here
  Table1Entry ref_e_n, ref_lo, ref_nlo, ref_n2lo;  // tabulated reference
};

std::string table1_text(const std::vector<Table1Row>& rows);
std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table1_json(const std::vector<Table1Row>& rows);

}  // namespace qdeut
