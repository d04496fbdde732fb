#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qdeut/backend.hpp"
#include "qdeut/hamiltonian.hpp"
#include "qdeut/report.hpp"
#include "qdeut/vqe.hpp"

using namespace qdeut;
using nlohmann::json;

namespace {

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("format_full round-trips doubles bit-exactly") {
  for (const double value :
       {0.0, -0.0, 1.0 / 3.0, -2.1433035249352805, 5.906709445, 1e-300, 1.7976931348623157e308}) {
    const std::string text = format_full(value);
    std::istringstream in(text);
    double back = 0.0;
    in >> back;
    CHECK(back == value);
  }
}

TEST_CASE("term labels compress Pauli strings to acting qubits") {
  CHECK(term_label("ZI") == "z0");
  CHECK(term_label("IZ") == "z1");
  CHECK(term_label("XX") == "x0x1");
  CHECK(term_label("YY") == "y0y1");
  CHECK(term_label("IXX") == "x1x2");
  CHECK(term_label("ZII") == "z0");
  CHECK(term_label("XYZ") == "x0y1z2");
}

TEST_CASE("presentation order: weight, then first qubit, then letter") {
  // Canonical (lexicographic) non-identity terms of the two-orbital
  // Hamiltonian: IZ, XX, YY, ZI. Presentation: z0, z1, x0x1, y0y1.
  const std::vector<std::string> canonical = {"IZ", "XX", "YY", "ZI"};
  const std::vector<std::size_t> order = presentation_order(canonical);
  REQUIRE(order.size() == 4);
  CHECK(canonical[order[0]] == "ZI");
  CHECK(canonical[order[1]] == "IZ");
  CHECK(canonical[order[2]] == "XX");
  CHECK(canonical[order[3]] == "YY");

  const std::vector<std::string> three = {"IIZ", "IXX", "IYY", "IZI", "XXI", "YYI", "ZII"};
  const std::vector<std::size_t> order3 = presentation_order(three);
  std::vector<std::string> arranged;
  for (const std::size_t i : order3) arranged.push_back(three[i]);
  // Weight-1 terms by qubit, then weight-2 terms by first qubit with the
  // X pair before the Y pair at the same position.
  CHECK(arranged == std::vector<std::string>{"ZII", "IZI", "IIZ", "XXI", "YYI", "IXX", "IYY"});
}

TEST_CASE("hamiltonian_text is the canonical five-line block") {
  const std::string text = hamiltonian_text(qubit_hamiltonian(2).simplified());
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "5.9067094450000006 0 II");
  CHECK(lines[1] == "-6.125 0 IZ");
  CHECK(lines[2] == "-2.1433035249352805 0 XX");
  CHECK(lines[3] == "-2.1433035249352805 0 YY");
  CHECK(lines[4] == "0.21829055499999983 0 ZI");
}

TEST_CASE("hamiltonian_json carries the matrix and the qubit terms") {
  const Eigen::MatrixXd m = build_matrix(2);
  const PauliSum sum = qubit_hamiltonian(2).simplified();
  const json doc = json::parse(hamiltonian_json(2, m, sum));
  CHECK(doc.at("basis_size") == 2);
  REQUIRE(doc.at("matrix").size() == 2);
  CHECK(doc.at("matrix")[0][0].get<double>() == doctest::Approx(-0.43658111));
  CHECK(doc.at("pauli").at("qubits") == 2);
  bool found_xx = false;
  for (const auto& term : doc.at("pauli").at("terms")) {
    if (term.at("string") == "XX") {
      found_xx = true;
      CHECK(term.at("coeff_real").get<double>() ==
            doctest::Approx(-2.1433035249352805).epsilon(1e-15));
      CHECK(term.at("coeff_imag").get<double>() == 0.0);
    }
  }
  CHECK(found_xx);
}

TEST_CASE("hamiltonian_csv holds the matrix block then the term block") {
  const std::string csv = hamiltonian_csv(build_matrix(2), qubit_hamiltonian(2).simplified());
  CHECK(first_line(csv) == "row,col,value");
  CHECK(csv.find("coeff_real,coeff_imag,string") != std::string::npos);
  CHECK(csv.find("-2.1433035249352805,0,XX") != std::string::npos);
}

TEST_CASE("spectrum reports") {
  const std::vector<double> energies = {-1.749159876321531, 13.5621598763};
  CHECK(first_line(spectrum_csv(energies)) == "level,energy");
  const json doc = json::parse(spectrum_json(2, energies));
  CHECK(doc.at("basis_size") == 2);
  CHECK(doc.at("energies").size() == 2);
  CHECK(doc.at("energies")[0].get<double>() ==
        doctest::Approx(-1.749159876321531).epsilon(1e-15));
  const std::string text = spectrum_text(2, energies);
  CHECK(text.find("ground") != std::string::npos);
}

TEST_CASE("scan_csv puts parameters, term columns, and the energy in order") {
  ScanReport report;
  report.param_names = {"theta"};
  report.term_labels = {"z0", "z1", "x0x1", "y0y1"};
  ScanReport::Row row;
  row.params = {0.25};
  row.terms.resize(4);
  for (int i = 0; i < 4; ++i) row.terms[i].mean = 0.1 * (i + 1);
  row.energy.mean = -1.5;
  row.energy.std_error = 0.0;
  report.rows.push_back(row);

  const std::string csv = scan_csv(report);
  CHECK(first_line(csv) == "theta,z0,z1,x0x1,y0y1,energy");
  CHECK(csv.find("-1.5") != std::string::npos);

  const json doc = json::parse(scan_json(report));
  REQUIRE(doc.at("rows").size() == 1);
  CHECK(doc.at("rows")[0].at("energy").at("mean").get<double>() == -1.5);
}

TEST_CASE("scan_csv keeps the same columns for sampled estimates; errors "
          "live in the JSON form") {
  ScanReport report;
  report.param_names = {"theta"};
  report.term_labels = {"z0"};
  ScanReport::Row row;
  row.params = {0.0};
  row.terms.resize(1);
  row.terms[0] = {0.5, 0.01, 100};
  row.energy = {-1.0, 0.05, 100};
  report.rows.push_back(row);
  CHECK(first_line(scan_csv(report)) == "theta,z0,energy");
  const json doc = json::parse(scan_json(report));
  CHECK(doc.at("rows")[0].at("energy").at("std_error").get<double>() == 0.05);
  CHECK(doc.at("rows")[0].at("terms")[0].at("label") == "z0");
  CHECK(doc.at("rows")[0].at("terms")[0].at("shots") == 100);
}

TEST_CASE("vqe reports carry the refinement summary") {
  VqeResult result;
  result.mode = Mode::sampled;
  result.master_seed = 7;
  result.rounds_requested = 3;
  result.rounds_completed = 2;
  result.best_params = {0.594};
  result.best_energy = -1.748;
  result.stat_error = 0.01;
  result.spline_residual = 0.002;
  result.uncertainty = 0.0102;
  result.final_grid.axes = {AxisSpec{0.5, 0.7, 13}};
  LandscapeSample sample;
  sample.params = {0.594};
  sample.energy = {-1.748, 0.01, 8192};
  result.final_samples.push_back(sample);

  const std::string csv = vqe_csv(result, {"theta"});
  CHECK(first_line(csv) ==
        "mode,master_seed,rounds_requested,rounds_completed,theta,best_energy,"
        "stat_error,spline_residual,uncertainty");

  const json doc = json::parse(vqe_json(result, {"theta"}));
  CHECK(doc.at("mode") == "sampled");
  CHECK(doc.at("best_energy").get<double>() == -1.748);
  CHECK(doc.at("param_names")[0] == "theta");
  CHECK(doc.at("best_params")[0].get<double>() == 0.594);
  CHECK(doc.at("rounds_completed") == 2);
  REQUIRE(doc.at("final_grid").size() == 1);
  CHECK(doc.at("final_grid")[0].at("points") == 13);
  CHECK(doc.at("final_samples").size() == 1);

  const std::string text = vqe_text(result, {"theta"});
  CHECK(text.find("sampled") != std::string::npos);
}

TEST_CASE("extrapolation_csv lists one row per fit") {
  ContinuumFit fit;
  fit.order = FitOrder::NLO;
  fit.k = 0.23;
  fit.gamma = 0.68;
  fit.e_infinity = -2.19;
  fit.iterations = 9;
  const std::string csv = extrapolation_csv({fit});
  CHECK(first_line(csv) ==
        "order,k,gamma,w2,e_infinity,e_infinity_err,residual_rms,iterations");
  const json doc = json::parse(extrapolation_json({fit}));
  REQUIRE(doc.at("fits").size() == 1);
  CHECK(doc.at("fits")[0].at("order") == "NLO");
  CHECK(doc.at("fits")[0].at("e_infinity").get<double>() == -2.19);
}

TEST_CASE("table1 reports cover both sources and all additions") {
  std::vector<Table1Row> rows(2);
  rows[0].source = "exact";
  rows[0].basis_size = 2;
  rows[0].e_n = {true, -1.749159876321531, 0.0};
  rows[0].ref_e_n = {true, -1.749, 0.0};
  rows[1].source = "quantum";
  rows[1].basis_size = 2;
  rows[1].e_n = {true, -1.74, 0.03};
  rows[1].ref_e_n = {true, -1.74, 0.03};

  const std::string text = table1_text(rows);
  CHECK(text.find("exact") != std::string::npos);
  CHECK(text.find("quantum") != std::string::npos);
  CHECK(first_line(text).find("source") != std::string::npos);
  CHECK(first_line(text).find("delta") != std::string::npos);

  const std::string csv = table1_csv(rows);
  CHECK(first_line(csv) ==
        "source,basis_size,quantity,value,error,reference,reference_error,delta");
  // Only present entries produce rows: one E_N row per source here.
  CHECK(csv.find("exact,2,E_N") != std::string::npos);
  CHECK(csv.find("quantum,2,E_N") != std::string::npos);
  CHECK(csv.find("LO") == std::string::npos);

  const json doc = json::parse(table1_json(rows));
  REQUIRE(doc.at("rows").size() == 2);
  CHECK(doc.at("rows")[0].at("source") == "exact");
  CHECK(doc.at("rows")[1].at("e_n").at("error").get<double>() == 0.03);
  CHECK(doc.at("rows")[1].at("lo").is_null());
  CHECK(doc.at("rows")[0].at("reference").at("e_n").at("value").get<double>() ==
        doctest::Approx(-1.749));
}

TEST_CASE("zne reports expose the series, the fits, and the summary") {
  ZneReport report;
  report.cnot_epsilon = 0.02;
  report.shots = 0;
  report.iterations = 1;
  report.params = {0.594};
  report.param_names = {"theta"};
  ZneTermReport term;
  term.coefficient = -6.125;
  term.series.ops = "IZ";
  term.series.scales = {1, 3};
  term.series.estimates.resize(2);
  term.series.estimates[0].mean = 0.8;
  term.series.estimates[1].mean = 0.6;
  term.fit.intercept = 0.9;
  term.fit.slope = -0.1;
  report.result.terms.push_back(term);
  report.result.energy.mean = -1.7;
  report.unmitigated_energy = -1.1;
  report.noiseless_energy = -1.749;

  const std::string csv = zne_csv(report);
  CHECK(first_line(csv) == "term,r,mean,std_error");
  CHECK(csv.find("z1,1,") != std::string::npos);
  CHECK(csv.find("term,coefficient,intercept,intercept_err,slope,residual_rms") !=
        std::string::npos);
  CHECK(csv.find("unmitigated_energy,") != std::string::npos);

  const json doc = json::parse(zne_json(report));
  CHECK(doc.at("terms")[0].at("label") == "z1");
  CHECK(doc.at("terms")[0].at("series")[0].at("scale") == 1);
  CHECK(doc.at("terms")[0].at("intercept").get<double>() == 0.9);
  CHECK(doc.at("energy").at("mean").get<double>() == -1.7);
  CHECK(doc.at("noiseless_energy").get<double>() == -1.749);

  const std::string text = zne_text(report);
  CHECK(text.find("mitigated energy") != std::string::npos);
  CHECK(text.find("z1") != std::string::npos);
}
