// Command-line front end: estimate covariance from CSV data, run seeded
// simulation campaigns, and emit validation report tables.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqcov/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("EQCOV_OUT");
  return env != nullptr ? env : ".";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw eqcov::ConfigError("cannot create output directory: " + dir);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw eqcov::ConfigError("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

std::vector<size_t> true_indices(const std::vector<bool>& flags) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) idx.push_back(i);
  }
  return idx;
}

int run_estimate(const std::string& input, const std::string& estimator,
                 bool center, bool skip_header, bool emit_matrix,
                 const std::string& out_dir) {
  eqcov::EstimatorKind kind = eqcov::parse_kind(estimator);
  if (eqcov::kind_needs_oracle(kind)) {
    throw eqcov::ConfigError("estimate: oracle estimators need the true "
                             "covariance and are simulation-only");
  }

  Eigen::MatrixXd raw = eqcov::read_csv_matrix(input, skip_header);
  if (center) raw.rowwise() -= raw.colwise().mean();
  eqcov::ObservationMatrix data(raw);
  if (data.n() <= data.p()) {
    throw eqcov::ConfigError("estimate: need n > p (got n=" +
                             std::to_string(data.n()) +
                             ", p=" + std::to_string(data.p()) + ")");
  }

  eqcov::SymmetricMatrix s = eqcov::sample_covariance(data);
  eqcov::SpectralDecomposition decomp = eqcov::eigh(s);
  eqcov::ShrunkSpectrum shrunk = eqcov::shrink(kind, decomp, data.n());

  ensure_dir(out_dir);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < decomp.dim(); ++i) {
    rows.push_back({static_cast<double>(i + 1), decomp.values[i],
                    shrunk.values[i]});
  }
  eqcov::write_csv(out_dir + "/shrunk_eigenvalues.csv",
                   {"index", "sample_eigenvalue", "shrunk_value"}, rows);

  if (emit_matrix) {
    eqcov::SymmetricMatrix est = eqcov::assemble(decomp, shrunk.values);
    std::vector<std::vector<double>> mat_rows;
    for (int i = 0; i < est.dim(); ++i) {
      std::vector<double> r;
      for (int j = 0; j < est.dim(); ++j) r.push_back(est(i, j));
      mat_rows.push_back(r);
    }
    eqcov::write_csv(out_dir + "/estimate_matrix.csv", {}, mat_rows);
  }

  json diag;
  diag["version"] = eqcov::kVersion;
  diag["estimator"] = eqcov::kind_name(kind);
  diag["n"] = data.n();
  diag["p"] = data.p();
  diag["c"] = static_cast<double>(data.p()) / data.n();
  diag["centered"] = center;
  diag["input"] = input;
  diag["negative_denominator_indices"] =
      true_indices(shrunk.negative_denominator);
  diag["isotonized_indices"] = true_indices(shrunk.isotonized);
  write_json_file(out_dir + "/diagnostics.json", diag);
  return 0;
}

int run_simulate(const std::string& config_path, int threads_override,
                 const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw eqcov::ConfigError("cannot open config file: " + config_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw eqcov::ConfigError("config parse error: " + std::string(e.what()));
  }
  eqcov::SimulationConfig config = eqcov::config_from_json(j);
  if (threads_override > 0) config.threads = threads_override;
  config.validate();

  eqcov::RiskTable table = eqcov::mc_risk(config);

  ensure_dir(out_dir);
  eqcov::write_risk_table_csv(out_dir + "/risk_table.csv", table);
  // The JSON echo pins threads to 1 so outputs stay byte-identical
  // across worker counts.
  eqcov::RiskTable echo = table;
  echo.config.threads = 1;
  write_json_file(out_dir + "/risk_table.json", eqcov::risk_table_to_json(echo));
  return 0;
}

int run_validate(const std::string& suite, double c, int p,
                 std::uint64_t seed, const std::string& spectrum_name,
                 const std::string& out_dir) {
  ensure_dir(out_dir);
  json echo;
  echo["version"] = eqcov::kVersion;
  echo["suite"] = suite;
  echo["c"] = c;
  echo["master_seed"] = seed;

  if (suite == "stieltjes") {
    int top = p > 0 ? p : 800;
    std::vector<int> dims;
    for (int d = top / 8; d <= top; d *= 2) dims.push_back(d);
    auto report = eqcov::stieltjes_convergence(c, dims, 5, seed);
    eqcov::write_stieltjes_report_csv(out_dir + "/stieltjes_report.csv", report);
    echo["dims"] = dims;
    echo["seeds"] = report.seeds;
  } else if (suite == "quantile") {
    int dim = p > 0 ? p : 2000;
    eqcov::SpectrumSpec spectrum;
    if (spectrum_name == "identity") {
      spectrum = eqcov::SpectrumSpec::MakeIdentity(dim);
    } else if (spectrum_name == "two_atom") {
      spectrum = eqcov::SpectrumSpec::Atoms(dim, {1.0, 5.0}, {0.5, 0.5});
    } else {
      throw eqcov::ConfigError("validate: unknown spectrum '" + spectrum_name +
                               "' (identity | two_atom)");
    }
    auto report = eqcov::quantile_report(c, dim, spectrum, seed,
                                         eqcov::default_alpha_grid());
    eqcov::write_quantile_report_csv(out_dir + "/quantile_report.csv", report);
    echo["p"] = dim;
    echo["spectrum"] = spectrum_name;
  } else if (suite == "oracle") {
    int dim = p > 0 ? p : 400;
    auto report =
        eqcov::oracle_report(c, dim, seed, eqcov::default_alpha_grid());
    eqcov::write_oracle_report_csv(out_dir + "/oracle_report.csv", report);
    echo["p"] = dim;
  } else {
    throw eqcov::ConfigError("validate: unknown suite '" + suite +
                             "' (stieltjes | quantile | oracle)");
  }
  write_json_file(out_dir + "/" + suite + "_report.json", echo);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonally equivariant covariance estimation toolkit"};
  app.require_subcommand(1);

  std::string input, estimator = "sample", out_dir = default_out_dir();
  bool center = false, skip_header = false, emit_matrix = false;
  auto* est = app.add_subcommand("estimate", "Estimate covariance from a CSV");
  est->add_option("--input", input, "CSV, rows = observations")->required();
  est->add_option("--estimator", estimator, "Shrinkage rule");
  est->add_flag("--center", center, "Subtract column means first");
  est->add_flag("--skip-header", skip_header, "Skip one header row");
  est->add_flag("--emit-matrix", emit_matrix, "Also write the full estimate");
  est->add_option("--out", out_dir, "Output directory");

  std::string config_path, sim_out = default_out_dir();
  int threads = 0;
  auto* sim = app.add_subcommand("simulate", "Run a Monte Carlo risk campaign");
  sim->add_option("--config", config_path, "JSON simulation config")->required();
  sim->add_option("--threads", threads, "Worker thread count");
  sim->add_option("--out", sim_out, "Output directory");

  std::string suite, spectrum_name = "identity", val_out = default_out_dir();
  double c = 0.5;
  int p = 0;
  std::uint64_t seed = 42;
  auto* val = app.add_subcommand("validate", "Run a validation experiment");
  val->add_option("--suite", suite, "stieltjes | quantile | oracle")->required();
  val->add_option("--c", c, "Concentration p/n");
  val->add_option("--p", p, "Dimension (suite-specific default)");
  val->add_option("--seed", seed, "Master seed");
  val->add_option("--spectrum", spectrum_name, "identity | two_atom");
  val->add_option("--out", val_out, "Output directory");

  try {
    app.parse(argc, argv);
    if (est->parsed()) {
      return run_estimate(input, estimator, center, skip_header, emit_matrix,
                          out_dir);
    }
    if (sim->parsed()) return run_simulate(config_path, threads, sim_out);
    if (val->parsed()) {
      return run_validate(suite, c, p, seed, spectrum_name, val_out);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const eqcov::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const eqcov::InvalidDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const eqcov::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
