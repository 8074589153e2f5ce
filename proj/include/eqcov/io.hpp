#ifndef EQCOV_IO_HPP
#define EQCOV_IO_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "eqcov/reports.hpp"
#include "eqcov/risk_lab.hpp"

namespace eqcov {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits, enough to round-trip a double exactly.
std::string format_g17(double v);

// CSV of observations, rows = observations, columns = variables,
// no header unless skip_header. Throws ConfigError on malformed input.
Eigen::MatrixXd read_csv_matrix(const std::string& path, bool skip_header);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

nlohmann::json spectrum_to_json(const SpectrumSpec& spec);
SpectrumSpec spectrum_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SimulationConfig& config);
SimulationConfig config_from_json(const nlohmann::json& j);

nlohmann::json risk_table_to_json(const RiskTable& table);
void write_risk_table_csv(const std::string& path, const RiskTable& table);

void write_stieltjes_report_csv(const std::string& path,
                                const StieltjesConvergenceReport& report);
void write_quantile_report_csv(const std::string& path,
                               const QuantileReport& report);
void write_oracle_report_csv(const std::string& path,
                             const OracleReport& report);

}  // namespace eqcov

#endif
