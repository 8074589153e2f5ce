#ifndef EQCOV_RISK_LAB_HPP
#define EQCOV_RISK_LAB_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eqcov/models_rng.hpp"
#include "eqcov/shrinkers.hpp"
#include "eqcov/spectral_core.hpp"

namespace eqcov {

struct LossValue {
  double value = 0.0;
  bool normalized = false;
};

// tr(Sigma^-1 Phi) - log det(Sigma^-1 Phi) - p, optionally divided by p.
// Computed through Cholesky solves; no explicit inversion.
LossValue stein_loss(const SymmetricMatrix& est, const SymmetricMatrix& sigma,
                     bool normalized);

// sum_i [psi_i/gamma_i - log(psi_i/gamma_i) - 1]; the Stein loss when
// estimator and Sigma share eigenvectors.
LossValue eigen_loss(const Eigen::VectorXd& psi, const Eigen::VectorXd& gamma,
                     bool normalized);

// Closed-form risk gap between the dispersed Stein approximation and the
// sample rule, three algebraically equal/ordered routes.
struct DispersedGap {
  double direct;       // sum_i n/(n+p-2i+1) - log(...) - 1
  double via_v;        // sum_{i<=p/2} 2 v_i - log v_i - 2
  double lower_bound;  // 2 sum_{i<=p/2} v_i - log v_i - 1
};
DispersedGap gap_stein_dispersed(int n, int p);

// Normalized-risk gaps of the dispersed Stein rule and the sample rule
// over the quantile-map rule.
struct DominanceGaps {
  double stein0_vs_tsai;  // (1/p) sum x_i - log x_i - 1, x_i=(n-i+1)/(n+p-2i+1)
  double sample_vs_tsai;  // (1/p) sum y_i - log y_i - 1, y_i=(n-i+1)/n
};
DominanceGaps dominance_gaps(int n, int p);

struct SimulationConfig {
  int n = 0;
  int p = 0;
  SpectrumSpec spectrum;
  bool rotate_population = false;
  std::vector<EstimatorKind> estimators;
  int trials = 0;
  std::uint64_t master_seed = 0;
  bool normalized = true;
  int threads = 1;

  void validate() const;  // throws ConfigError with a field-level message
};

struct RiskRow {
  EstimatorKind kind = EstimatorKind::sample;
  double mean_risk = 0.0;
  double std_error = 0.0;
  int trials = 0;
  int failures = 0;  // kinds with failures have NaN mean/SE
};

struct RiskTable {
  std::vector<RiskRow> rows;
  SimulationConfig config;
  std::optional<DispersedGap> dispersed_gap;
  std::optional<DominanceGaps> dominance;
};

// Seeded Monte Carlo risk comparison. Trial t draws from stream t of the
// master seed; aggregation is ordered by trial index, so the result is a
// pure function of the config regardless of thread count.
RiskTable mc_risk(const SimulationConfig& config);

struct EigenRatioRow {
  int index = 0;           // 1-based
  double mean_ratio = 0.0; // mean of l_i / gamma_i
  double std_error = 0.0;
  double predicted = 0.0;  // (n - i + 1) / n
};

struct EigenRatioReport {
  std::vector<EigenRatioRow> rows;
  bool dispersed_regime = true;  // false: adjacent spectrum ratios < 100
  int n = 0;
  int p = 0;
  int trials = 0;
  std::uint64_t master_seed = 0;
};

// Monte Carlo check of E[l_i/gamma_i] against (n-i+1)/n. Report only;
// callers decide what counts as agreement.
EigenRatioReport eigen_ratio_check(int n, int p, const SpectrumSpec& spectrum,
                                   int trials, std::uint64_t master_seed);

}  // namespace eqcov

#endif
