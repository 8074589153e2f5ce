#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "eqcov/io.hpp"

using namespace eqcov;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = std::string(std::tmpnam(nullptr)) + ".csv";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("quantile index convention") {
  CHECK(quantile_index(10, 0.5) == 5);
  CHECK(quantile_index(10, 0.05) == 9);
  CHECK(quantile_index(10, 0.95) == 1);
  CHECK(quantile_index(10, 0.999) == 1);
  CHECK(quantile_index(3, 0.0) == 3);
  CHECK(quantile_index(400, 0.25) == 300);
}

TEST_CASE("default alpha grid") {
  std::vector<double> grid = default_alpha_grid();
  REQUIRE(grid.size() == 19);
  CHECK(grid.front() == doctest::Approx(0.05));
  CHECK(grid.back() == doctest::Approx(0.95));
  for (size_t i = 0; i + 1 < grid.size(); ++i) CHECK(grid[i] < grid[i + 1]);
}

TEST_CASE("g17 formatting round trips doubles") {
  for (double v : {1.0 / 3.0, 2.857142857142857, -1e-17, 12345.678901234567}) {
    CHECK(std::stod(format_g17(v)) == v);
  }
}

TEST_CASE("csv reader parses rectangular numeric files") {
  TempFile f("1,2\n3,4\n5.5,-6e-2\n");
  Eigen::MatrixXd m = read_csv_matrix(f.path, false);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m(2, 0) == doctest::Approx(5.5));
  CHECK(m(2, 1) == doctest::Approx(-0.06));
}

TEST_CASE("csv reader skips a header on request") {
  TempFile f("a,b\n1,2\n");
  CHECK_THROWS_AS(read_csv_matrix(f.path, false), ConfigError);
  Eigen::MatrixXd m = read_csv_matrix(f.path, true);
  REQUIRE(m.rows() == 1);
  CHECK(m(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("csv reader rejects ragged and empty input") {
  TempFile ragged("1,2\n3\n");
  CHECK_THROWS_AS(read_csv_matrix(ragged.path, false), ConfigError);
  TempFile empty("");
  CHECK_THROWS_AS(read_csv_matrix(empty.path, false), ConfigError);
  CHECK_THROWS_AS(read_csv_matrix("/nonexistent/file.csv", false), ConfigError);
}

TEST_CASE("spectrum and config json round trip") {
  SimulationConfig config;
  config.n = 100;
  config.p = 50;
  config.spectrum = SpectrumSpec::Geometric(50, 100.0, 2.0);
  config.rotate_population = true;
  config.estimators = {EstimatorKind::sample, EstimatorKind::tsai};
  config.trials = 200;
  config.master_seed = 42;
  config.normalized = false;
  config.threads = 3;

  SimulationConfig back = config_from_json(config_to_json(config));
  CHECK(back.n == config.n);
  CHECK(back.p == config.p);
  CHECK(back.spectrum.kind == config.spectrum.kind);
  CHECK(back.spectrum.ratio == config.spectrum.ratio);
  CHECK(back.spectrum.scale == config.spectrum.scale);
  CHECK(back.rotate_population == config.rotate_population);
  CHECK(back.estimators == config.estimators);
  CHECK(back.trials == config.trials);
  CHECK(back.master_seed == config.master_seed);
  CHECK(back.normalized == config.normalized);
  CHECK(back.threads == config.threads);
}

TEST_CASE("config json requires core fields") {
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"p", 5}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"n", 5}}), ConfigError);
  nlohmann::json minimal{{"n", 10}, {"p", 5}};
  CHECK_THROWS_AS(config_from_json(minimal), ConfigError);
}

TEST_CASE("stieltjes convergence report shrinks with dimension") {
  StieltjesConvergenceReport report =
      stieltjes_convergence(0.5, {50, 200}, 3, 42);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].n == 100);
  CHECK(report.rows[1].n == 400);
  CHECK(report.rows[1].median_deviation < report.rows[0].median_deviation);
}

TEST_CASE("quantile report columns for the identity population") {
  QuantileReport report = quantile_report(
      0.5, 200, SpectrumSpec::MakeIdentity(200), 42, {0.25, 0.5, 0.75});
  REQUIRE(report.rows.size() == 3);
  CHECK(report.identity_population);
  for (const QuantileRow& row : report.rows) {
    CHECK(row.gamma_true == doctest::Approx(1.0));
    CHECK(std::isfinite(row.mp_map_closed));
    CHECK(row.l_hat > 0.0);
    // Loose finite-p sanity; tight bounds live in the acceptance suite.
    CHECK(std::abs(row.phi - 1.0) < 0.5);
  }

  QuantileReport atoms = quantile_report(
      0.5, 200, SpectrumSpec::Atoms(200, {1.0, 5.0}, {0.5, 0.5}), 42, {0.5});
  CHECK(!atoms.identity_population);
  CHECK(std::isnan(atoms.rows[0].mp_map_closed));
}

TEST_CASE("oracle report closed-form columns are exactly one in the bulk") {
  OracleReport report = oracle_report(0.5, 200, 42, {0.3, 0.5, 0.7});
  for (const OracleRow& row : report.rows) {
    if (std::isfinite(row.product_closed)) {
      CHECK(row.product_closed == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(row.phi_closed == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(std::isfinite(row.product_emp));
  }
}

TEST_CASE("risk table serialization is stable") {
  SimulationConfig config;
  config.n = 20;
  config.p = 3;
  config.spectrum = SpectrumSpec::MakeIdentity(3);
  config.estimators = {EstimatorKind::sample};
  config.trials = 5;
  config.master_seed = 3;
  RiskTable table = mc_risk(config);

  std::string path = std::string(std::tmpnam(nullptr)) + ".csv";
  write_risk_table_csv(path, table);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "estimator,mean_risk,std_error,trials,failures,"
        "gap_stein_dispersed_direct,gap_stein0_vs_tsai,gap_sample_vs_tsai");
  std::string row;
  std::getline(in, row);
  CHECK(row.substr(0, 7) == "sample,");
  std::remove(path.c_str());
}
