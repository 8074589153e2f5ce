#include "eqcov/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace eqcov {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Eigen::MatrixXd read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_header && lineno == 1) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(cell[used])) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": cannot parse cell '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": ragged row (" + std::to_string(row.size()) +
                        " columns, expected " +
                        std::to_string(rows.front().size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError(path + ": no data rows");

  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows.front().size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  for (size_t j = 0; j < header.size(); ++j) {
    out << header[j] << (j + 1 < header.size() ? "," : "\n");
  }
  for (const auto& row : rows) {
    for (size_t j = 0; j < row.size(); ++j) {
      out << format_g17(row[j]) << (j + 1 < row.size() ? "," : "\n");
    }
  }
}

nlohmann::json spectrum_to_json(const SpectrumSpec& spec) {
  nlohmann::json j;
  switch (spec.kind) {
    case SpectrumSpec::Kind::identity: j["kind"] = "identity"; break;
    case SpectrumSpec::Kind::geometric: j["kind"] = "geometric"; break;
    case SpectrumSpec::Kind::explicit_list: j["kind"] = "explicit"; break;
    case SpectrumSpec::Kind::atoms: j["kind"] = "atoms"; break;
  }
  j["p"] = spec.p;
  j["scale"] = spec.scale;
  if (spec.kind == SpectrumSpec::Kind::geometric) j["ratio"] = spec.ratio;
  if (!spec.values.empty()) j["values"] = spec.values;
  if (!spec.weights.empty()) j["weights"] = spec.weights;
  return j;
}

SpectrumSpec spectrum_from_json(const nlohmann::json& j) {
  SpectrumSpec spec;
  std::string kind = j.value("kind", "identity");
  if (kind == "identity") {
    spec.kind = SpectrumSpec::Kind::identity;
  } else if (kind == "geometric") {
    spec.kind = SpectrumSpec::Kind::geometric;
  } else if (kind == "explicit") {
    spec.kind = SpectrumSpec::Kind::explicit_list;
  } else if (kind == "atoms") {
    spec.kind = SpectrumSpec::Kind::atoms;
  } else {
    throw ConfigError("spectrum.kind: unknown kind '" + kind + "'");
  }
  spec.p = j.value("p", 0);
  spec.scale = j.value("scale", 1.0);
  spec.ratio = j.value("ratio", 1.0);
  if (j.contains("values")) spec.values = j["values"].get<std::vector<double>>();
  if (j.contains("weights")) {
    spec.weights = j["weights"].get<std::vector<double>>();
  }
  if (spec.kind == SpectrumSpec::Kind::explicit_list && spec.p == 0) {
    spec.p = static_cast<int>(spec.values.size());
  }
  return spec;
}

nlohmann::json config_to_json(const SimulationConfig& config) {
  nlohmann::json j;
  j["n"] = config.n;
  j["p"] = config.p;
  j["spectrum"] = spectrum_to_json(config.spectrum);
  j["rotate_population"] = config.rotate_population;
  std::vector<std::string> kinds;
  for (EstimatorKind k : config.estimators) kinds.push_back(kind_name(k));
  j["estimators"] = kinds;
  j["trials"] = config.trials;
  j["master_seed"] = config.master_seed;
  j["normalized"] = config.normalized;
  j["threads"] = config.threads;
  return j;
}

SimulationConfig config_from_json(const nlohmann::json& j) {
  SimulationConfig config;
  if (!j.contains("n")) throw ConfigError("config.n: missing");
  if (!j.contains("p")) throw ConfigError("config.p: missing");
  config.n = j["n"].get<int>();
  config.p = j["p"].get<int>();
  if (j.contains("spectrum")) {
    config.spectrum = spectrum_from_json(j["spectrum"]);
    if (config.spectrum.p == 0) config.spectrum.p = config.p;
  } else {
    config.spectrum = SpectrumSpec::MakeIdentity(config.p);
  }
  config.rotate_population = j.value("rotate_population", false);
  if (!j.contains("estimators")) throw ConfigError("config.estimators: missing");
  for (const auto& name : j["estimators"]) {
    config.estimators.push_back(parse_kind(name.get<std::string>()));
  }
  config.trials = j.value("trials", 0);
  config.master_seed = j.value("master_seed", std::uint64_t{0});
  config.normalized = j.value("normalized", true);
  config.threads = j.value("threads", 1);
  return config;
}

nlohmann::json risk_table_to_json(const RiskTable& table) {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = config_to_json(table.config);
  nlohmann::json rows = nlohmann::json::array();
  for (const RiskRow& row : table.rows) {
    nlohmann::json r;
    r["estimator"] = kind_name(row.kind);
    r["mean_risk"] = format_g17(row.mean_risk);
    r["std_error"] = format_g17(row.std_error);
    r["trials"] = row.trials;
    r["failures"] = row.failures;
    rows.push_back(r);
  }
  j["rows"] = rows;
  if (table.dispersed_gap) {
    j["gap_stein_dispersed"] = {
        {"direct", format_g17(table.dispersed_gap->direct)},
        {"via_v", format_g17(table.dispersed_gap->via_v)},
        {"lower_bound", format_g17(table.dispersed_gap->lower_bound)}};
  }
  if (table.dominance) {
    j["dominance_gaps"] = {
        {"gap_stein0_vs_tsai", format_g17(table.dominance->stein0_vs_tsai)},
        {"gap_sample_vs_tsai", format_g17(table.dominance->sample_vs_tsai)}};
  }
  return j;
}

void write_risk_table_csv(const std::string& path, const RiskTable& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "estimator,mean_risk,std_error,trials,failures,"
         "gap_stein_dispersed_direct,gap_stein0_vs_tsai,gap_sample_vs_tsai\n";
  for (const RiskRow& row : table.rows) {
    out << kind_name(row.kind) << "," << format_g17(row.mean_risk) << ","
        << format_g17(row.std_error) << "," << row.trials << "," << row.failures
        << ",";
    out << (table.dispersed_gap ? format_g17(table.dispersed_gap->direct) : "")
        << ",";
    out << (table.dominance ? format_g17(table.dominance->stein0_vs_tsai) : "")
        << ",";
    out << (table.dominance ? format_g17(table.dominance->sample_vs_tsai) : "")
        << "\n";
  }
}

void write_stieltjes_report_csv(const std::string& path,
                                const StieltjesConvergenceReport& report) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : report.rows) {
    rows.push_back({static_cast<double>(row.p), static_cast<double>(row.n),
                    row.median_deviation});
  }
  write_csv(path, {"p", "n", "median_deviation"}, rows);
}

void write_quantile_report_csv(const std::string& path,
                               const QuantileReport& report) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : report.rows) {
    rows.push_back({row.alpha, static_cast<double>(row.index), row.l_hat,
                    row.gamma_map, row.phi, row.gamma_true, row.mp_map_closed});
  }
  write_csv(path,
            {"alpha", "index", "l_hat", "gamma_map", "phi", "gamma_true",
             "mp_map_closed"},
            rows);
}

void write_oracle_report_csv(const std::string& path,
                             const OracleReport& report) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : report.rows) {
    rows.push_back({row.alpha, row.l_hat, row.delta_emp, row.delta_inv_emp,
                    row.product_emp, row.phi_emp, row.product_closed,
                    row.phi_closed});
  }
  write_csv(path,
            {"alpha", "l_hat", "delta_emp", "delta_inv_emp", "product_emp",
             "phi_emp", "product_closed", "phi_closed"},
            rows);
}

}  // namespace eqcov
