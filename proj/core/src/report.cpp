#include "qdeut/report.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qdeut {

namespace {

using nlohmann::json;

json estimate_json(const ExpectationEstimate& est) {
  return json{{"mean", est.mean}, {"std_error", est.std_error}, {"shots", est.shots}};
}

json entry_json(const Table1Entry& entry) {
  if (!entry.present) return nullptr;
  return json{{"value", entry.value}, {"error", entry.error}};
}

struct TermKey {
  int weight;
  int first_qubit;
  std::string ops;
};

TermKey term_key(const std::string& ops) {
  TermKey key{0, static_cast<int>(ops.size()), ops};
  for (std::size_t q = 0; q < ops.size(); ++q) {
    if (ops[q] != 'I') {
      ++key.weight;
      key.first_qubit = std::min(key.first_qubit, static_cast<int>(q));
    }
  }
  return key;
}

void append_csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
}

std::string fixed3(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

}  // namespace

std::string format_full(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string term_label(std::string_view ops) {
  std::string label;
  for (std::size_t q = 0; q < ops.size(); ++q) {
    if (ops[q] == 'I') continue;
    label += static_cast<char>(std::tolower(static_cast<unsigned char>(ops[q])));
    label += std::to_string(q);
  }
  if (label.empty()) throw std::invalid_argument("identity strings have no measurement label");
  return label;
}

std::vector<std::size_t> presentation_order(const std::vector<std::string>& ops) {
  std::vector<std::size_t> order(ops.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const TermKey ka = term_key(ops[a]);
    const TermKey kb = term_key(ops[b]);
    if (ka.weight != kb.weight) return ka.weight < kb.weight;
    if (ka.first_qubit != kb.first_qubit) return ka.first_qubit < kb.first_qubit;
    return ka.ops < kb.ops;
  });
  return order;
}

// --- hamiltonian -----------------------------------------------------------

std::string hamiltonian_text(const PauliSum& sum) { return sum.to_text(); }

std::string hamiltonian_csv(const Eigen::MatrixXd& matrix, const PauliSum& sum) {
  std::string out;
  append_csv_row(out, {"row", "col", "value"});
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      append_csv_row(out, {std::to_string(i), std::to_string(j), format_full(matrix(i, j))});
    }
  }
  out += '\n';
  append_csv_row(out, {"coeff_real", "coeff_imag", "string"});
  for (const PauliTerm& term : sum.terms()) {
    append_csv_row(out,
                   {format_full(term.coeff.real()), format_full(term.coeff.imag()), term.ops});
  }
  return out;
}

std::string hamiltonian_json(int basis_size, const Eigen::MatrixXd& matrix,
                             const PauliSum& sum) {
  json matrix_rows = json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row.push_back(matrix(i, j));
    matrix_rows.push_back(std::move(row));
  }
  json terms = json::array();
  for (const PauliTerm& term : sum.terms()) {
    terms.push_back(json{{"coeff_real", term.coeff.real()},
                         {"coeff_imag", term.coeff.imag()},
                         {"string", term.ops}});
  }
  const json doc{{"basis_size", basis_size},
                 {"matrix", std::move(matrix_rows)},
                 {"pauli", json{{"qubits", sum.qubit_count()}, {"terms", std::move(terms)}}}};
  return doc.dump(2) + "\n";
}

// --- exact spectrum --------------------------------------------------------

std::string spectrum_text(int basis_size, const std::vector<double>& energies) {
  std::ostringstream out;
  out << "basis size " << basis_size << "\n";
  for (std::size_t i = 0; i < energies.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "level %zu  %.6f\n", i, energies[i]);
    out << buf;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "ground energy %.6f\n", energies.empty() ? 0.0 : energies[0]);
  out << buf;
  return out.str();
}

std::string spectrum_csv(const std::vector<double>& energies) {
  std::string out;
  append_csv_row(out, {"level", "energy"});
  for (std::size_t i = 0; i < energies.size(); ++i) {
    append_csv_row(out, {std::to_string(i), format_full(energies[i])});
  }
  return out;
}

std::string spectrum_json(int basis_size, const std::vector<double>& energies) {
  const json doc{{"basis_size", basis_size},
                 {"energies", energies},
                 {"ground_energy", energies.empty() ? 0.0 : energies.front()}};
  return doc.dump(2) + "\n";
}

// --- landscape scan --------------------------------------------------------

std::string scan_csv(const ScanReport& report) {
  std::string out;
  std::vector<std::string> header = report.param_names;
  header.insert(header.end(), report.term_labels.begin(), report.term_labels.end());
  header.push_back("energy");
  append_csv_row(out, header);
  for (const ScanReport::Row& row : report.rows) {
    std::vector<std::string> cells;
    for (const double p : row.params) cells.push_back(format_full(p));
    for (const ExpectationEstimate& est : row.terms) cells.push_back(format_full(est.mean));
    cells.push_back(format_full(row.energy.mean));
    append_csv_row(out, cells);
  }
  return out;
}

std::string scan_json(const ScanReport& report) {
  json rows = json::array();
  for (const ScanReport::Row& row : report.rows) {
    json terms = json::array();
    for (std::size_t t = 0; t < row.terms.size(); ++t) {
      json term = estimate_json(row.terms[t]);
      term["label"] = report.term_labels[t];
      terms.push_back(std::move(term));
    }
    rows.push_back(json{{"params", row.params},
                        {"terms", std::move(terms)},
                        {"energy", estimate_json(row.energy)}});
  }
  const json doc{{"param_names", report.param_names},
                 {"term_labels", report.term_labels},
                 {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

// --- minimisation ----------------------------------------------------------

namespace {

json grid_json(const GridSpec& grid) {
  json axes = json::array();
  for (const AxisSpec& axis : grid.axes) {
    axes.push_back(json{{"lo", axis.lo}, {"hi", axis.hi}, {"points", axis.points}});
  }
  return axes;
}

}  // namespace

std::string vqe_text(const VqeResult& result, const std::vector<std::string>& param_names) {
  std::ostringstream out;
  out << "mode " << to_string(result.mode) << ", seed " << result.master_seed << ", rounds "
      << result.rounds_completed << "/" << result.rounds_requested << "\n";
  for (std::size_t a = 0; a < result.best_params.size(); ++a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s = %.9f\n", param_names[a].c_str(),
                  result.best_params[a]);
    out << buf;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "minimum energy %.6f +/- %.6f  (statistical %.6f, interpolation %.6f)\n",
                result.best_energy, result.uncertainty, result.stat_error,
                result.spline_residual);
  out << buf;
  return out.str();
}

std::string vqe_csv(const VqeResult& result, const std::vector<std::string>& param_names) {
  std::string out;
  std::vector<std::string> header = {"mode", "master_seed", "rounds_requested",
                                     "rounds_completed"};
  header.insert(header.end(), param_names.begin(), param_names.end());
  header.insert(header.end(), {"best_energy", "stat_error", "spline_residual", "uncertainty"});
  append_csv_row(out, header);

  std::vector<std::string> cells = {to_string(result.mode), std::to_string(result.master_seed),
                                    std::to_string(result.rounds_requested),
                                    std::to_string(result.rounds_completed)};
  for (const double p : result.best_params) cells.push_back(format_full(p));
  cells.push_back(format_full(result.best_energy));
  cells.push_back(format_full(result.stat_error));
  cells.push_back(format_full(result.spline_residual));
  cells.push_back(format_full(result.uncertainty));
  append_csv_row(out, cells);
  return out;
}

std::string vqe_json(const VqeResult& result, const std::vector<std::string>& param_names) {
  json samples = json::array();
  for (const LandscapeSample& sample : result.final_samples) {
    samples.push_back(json{{"params", sample.params},
                           {"mean", sample.energy.mean},
                           {"std_error", sample.energy.std_error},
                           {"shots", sample.energy.shots}});
  }
  const json doc{{"mode", to_string(result.mode)},
                 {"master_seed", result.master_seed},
                 {"rounds_requested", result.rounds_requested},
                 {"rounds_completed", result.rounds_completed},
                 {"param_names", param_names},
                 {"best_params", result.best_params},
                 {"best_energy", result.best_energy},
                 {"stat_error", result.stat_error},
                 {"spline_residual", result.spline_residual},
                 {"uncertainty", result.uncertainty},
                 {"final_grid", grid_json(result.final_grid)},
                 {"final_samples", std::move(samples)}};
  return doc.dump(2) + "\n";
}

// --- zero-noise extrapolation ----------------------------------------------

std::string zne_text(const ZneReport& report) {
  std::ostringstream out;
  char buf[200];
  std::snprintf(buf, sizeof buf, "cnot epsilon %g, shots %ld, iterations %d\n",
                report.cnot_epsilon, report.shots, report.iterations);
  out << buf;
  for (std::size_t a = 0; a < report.params.size(); ++a) {
    std::snprintf(buf, sizeof buf, "%s = %.9f\n", report.param_names[a].c_str(),
                  report.params[a]);
    out << buf;
  }
  for (const ZneTermReport& term : report.result.terms) {
    std::snprintf(buf, sizeof buf, "%-6s intercept %+.6f +/- %.6f  slope %+.6f\n",
                  term_label(term.series.ops).c_str(), term.fit.intercept,
                  term.fit.intercept_err, term.fit.slope);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "mitigated energy %.6f +/- %.6f\n", report.result.energy.mean,
                report.result.energy.std_error);
  out << buf;
  std::snprintf(buf, sizeof buf, "unmitigated energy %.6f\nnoiseless energy %.6f\n",
                report.unmitigated_energy, report.noiseless_energy);
  out << buf;
  return out.str();
}

std::string zne_csv(const ZneReport& report) {
  std::string out;
  append_csv_row(out, {"term", "r", "mean", "std_error"});
  for (const ZneTermReport& term : report.result.terms) {
    const std::string label = term_label(term.series.ops);
    for (std::size_t i = 0; i < term.series.scales.size(); ++i) {
      append_csv_row(out, {label, std::to_string(term.series.scales[i]),
                           format_full(term.series.estimates[i].mean),
                           format_full(term.series.estimates[i].std_error)});
    }
  }
  out += '\n';
  append_csv_row(out, {"term", "coefficient", "intercept", "intercept_err", "slope",
                       "residual_rms"});
  for (const ZneTermReport& term : report.result.terms) {
    append_csv_row(out, {term_label(term.series.ops), format_full(term.coefficient),
                         format_full(term.fit.intercept), format_full(term.fit.intercept_err),
                         format_full(term.fit.slope), format_full(term.fit.residual_rms)});
  }
  out += '\n';
  append_csv_row(out, {"quantity", "value"});
  append_csv_row(out, {"energy", format_full(report.result.energy.mean)});
  append_csv_row(out, {"energy_std_error", format_full(report.result.energy.std_error)});
  append_csv_row(out, {"unmitigated_energy", format_full(report.unmitigated_energy)});
  append_csv_row(out, {"noiseless_energy", format_full(report.noiseless_energy)});
  append_csv_row(out, {"cnot_epsilon", format_full(report.cnot_epsilon)});
  append_csv_row(out, {"shots", std::to_string(report.shots)});
  append_csv_row(out, {"iterations", std::to_string(report.iterations)});
  return out;
}

std::string zne_json(const ZneReport& report) {
  json terms = json::array();
  for (const ZneTermReport& term : report.result.terms) {
    json series = json::array();
    for (std::size_t i = 0; i < term.series.scales.size(); ++i) {
      json point = estimate_json(term.series.estimates[i]);
      point["scale"] = term.series.scales[i];
      series.push_back(std::move(point));
    }
    terms.push_back(json{{"label", term_label(term.series.ops)},
                         {"string", term.series.ops},
                         {"coefficient", term.coefficient},
                         {"series", std::move(series)},
                         {"intercept", term.fit.intercept},
                         {"intercept_err", term.fit.intercept_err},
                         {"slope", term.fit.slope},
                         {"residual_rms", term.fit.residual_rms}});
  }
  const json doc{{"cnot_epsilon", report.cnot_epsilon},
                 {"shots", report.shots},
                 {"iterations", report.iterations},
                 {"param_names", report.param_names},
                 {"params", report.params},
                 {"terms", std::move(terms)},
                 {"energy", json{{"mean", report.result.energy.mean},
                                 {"std_error", report.result.energy.std_error}}},
                 {"unmitigated_energy", report.unmitigated_energy},
                 {"noiseless_energy", report.noiseless_energy}};
  return doc.dump(2) + "\n";
}

// --- continuum extrapolation -----------------------------------------------

std::string extrapolation_text(const std::vector<ContinuumFit>& fits) {
  std::ostringstream out;
  for (const ContinuumFit& fit : fits) {
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "%-5s k %.6f  gamma %.6f  w2 %+.6f  E_inf %.3f +/- %.3f  residual %.2e\n",
                  to_string(fit.order).c_str(), fit.k, fit.gamma, fit.w2, fit.e_infinity,
                  fit.e_infinity_err, fit.residual_rms);
    out << buf;
  }
  return out.str();
}

std::string extrapolation_csv(const std::vector<ContinuumFit>& fits) {
  std::string out;
  append_csv_row(out, {"order", "k", "gamma", "w2", "e_infinity", "e_infinity_err",
                       "residual_rms", "iterations"});
  for (const ContinuumFit& fit : fits) {
    append_csv_row(out, {to_string(fit.order), format_full(fit.k), format_full(fit.gamma),
                         format_full(fit.w2), format_full(fit.e_infinity),
                         format_full(fit.e_infinity_err), format_full(fit.residual_rms),
                         std::to_string(fit.iterations)});
  }
  return out;
}

std::string extrapolation_json(const std::vector<ContinuumFit>& fits) {
  json list = json::array();
  for (const ContinuumFit& fit : fits) {
    json points = json::array();
    for (const ContinuumPoint& p : fit.points) {
      points.push_back(
          json{{"length", p.length}, {"energy", p.energy}, {"uncertainty", p.uncertainty}});
    }
    list.push_back(json{{"order", to_string(fit.order)},
                        {"k", fit.k},
                        {"gamma", fit.gamma},
                        {"w2", fit.w2},
                        {"e_infinity", fit.e_infinity},
                        {"e_infinity_err", fit.e_infinity_err},
                        {"residual_rms", fit.residual_rms},
                        {"iterations", fit.iterations},
                        {"points", std::move(points)}});
  }
  const json doc{{"fits", std::move(list)}};
  return doc.dump(2) + "\n";
}

// --- energy table ----------------------------------------------------------

namespace {

struct NamedEntry {
  const char* name;
  const Table1Entry* value;
  const Table1Entry* reference;
};

std::vector<NamedEntry> row_entries(const Table1Row& row) {
  return {{"E_N", &row.e_n, &row.ref_e_n},
          {"LO", &row.lo, &row.ref_lo},
          {"NLO", &row.nlo, &row.ref_nlo},
          {"N2LO", &row.n2lo, &row.ref_n2lo}};
}

}  // namespace

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::ostringstream out;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-8s %-2s %-5s %10s %8s %10s %8s\n", "source", "N",
                "order", "energy", "error", "reference", "delta");
  out << buf;
  for (const Table1Row& row : rows) {
    for (const NamedEntry& entry : row_entries(row)) {
      if (!entry.value->present) continue;
      const double reference = entry.reference->present ? entry.reference->value : 0.0;
      std::snprintf(buf, sizeof buf, "%-8s %-2d %-5s %10.3f %8.3f %10.3f %+8.3f\n",
                    row.source.c_str(), row.basis_size, entry.name, entry.value->value,
                    entry.value->error, reference, entry.value->value - reference);
      out << buf;
    }
  }
  return out.str();
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out;
  append_csv_row(out, {"source", "basis_size", "quantity", "value", "error", "reference",
                       "reference_error", "delta"});
  for (const Table1Row& row : rows) {
    for (const NamedEntry& entry : row_entries(row)) {
      if (!entry.value->present) continue;
      const double reference = entry.reference->present ? entry.reference->value : 0.0;
      append_csv_row(out, {row.source, std::to_string(row.basis_size), entry.name,
                           format_full(entry.value->value), format_full(entry.value->error),
                           format_full(reference), format_full(entry.reference->error),
                           format_full(entry.value->value - reference)});
    }
  }
  return out;
}

std::string table1_json(const std::vector<Table1Row>& rows) {
  json list = json::array();
  for (const Table1Row& row : rows) {
    list.push_back(json{{"source", row.source},
                        {"basis_size", row.basis_size},
                        {"e_n", entry_json(row.e_n)},
                        {"lo", entry_json(row.lo)},
                        {"nlo", entry_json(row.nlo)},
                        {"n2lo", entry_json(row.n2lo)},
                        {"reference", json{{"e_n", entry_json(row.ref_e_n)},
                                           {"lo", entry_json(row.ref_lo)},
                                           {"nlo", entry_json(row.ref_nlo)},
                                           {"n2lo", entry_json(row.ref_n2lo)}}}});
  }
  const json doc{{"rows", std::move(list)}};
  return doc.dump(2) + "\n";
}

}  // namespace qdeut
