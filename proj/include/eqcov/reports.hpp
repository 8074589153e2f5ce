#ifndef EQCOV_REPORTS_HPP
#define EQCOV_REPORTS_HPP

#include <cstdint>
#include <vector>

#include "eqcov/models_rng.hpp"
#include "eqcov/stieltjes.hpp"

namespace eqcov {

// Plug-in convergence of the empirical resolvent trace to the MP
// closed form at a fixed point of C+, over a ladder of dimensions.
struct StieltjesConvergenceRow {
  int p = 0;
  int n = 0;
  double median_deviation = 0.0;  // median over seeds of |m_emp - m_mp|
};

struct StieltjesConvergenceReport {
  double c = 0.0;
  std::complex<double> z;
  int seeds = 0;
  std::uint64_t master_seed = 0;
  std::vector<StieltjesConvergenceRow> rows;
};

StieltjesConvergenceReport stieltjes_convergence(
    double c, const std::vector<int>& dims, int seeds,
    std::uint64_t master_seed, std::complex<double> z = {1.0, 1.0});

// Quantile comparison: empirical sample quantile, the quantile map
// applied to it, the asymptotic oracle phi, and the true population
// quantile of H. Boundary values come from the smoothed kernel estimate;
// the raw per-eigenvalue principal value does not converge pointwise.
struct QuantileRow {
  double alpha = 0.0;
  int index = 0;            // 1-based, [p(1-alpha)]
  double l_hat = 0.0;       // empirical sample quantile
  double gamma_map = 0.0;   // quantile map of l_hat
  double phi = 0.0;         // asymptotic oracle of l_hat
  double gamma_true = 0.0;  // quantile of the population spectrum
  double mp_map_closed = 0.0;  // 2l/(1-c+l) when the population is identity
};

struct QuantileReport {
  double c = 0.0;
  int p = 0;
  int n = 0;
  std::uint64_t master_seed = 0;
  bool identity_population = false;
  std::vector<QuantileRow> rows;
};

QuantileReport quantile_report(double c, int p, const SpectrumSpec& spectrum,
                               std::uint64_t master_seed,
                               const std::vector<double>& alphas);

// Oracle identity table for the identity population: delta, delta-inverse
// and phi at bulk quantiles, both from smoothed empirical boundary values
// and from the MP closed form.
struct OracleRow {
  double alpha = 0.0;
  double l_hat = 0.0;
  double delta_emp = 0.0;
  double delta_inv_emp = 0.0;
  double product_emp = 0.0;  // delta_emp * delta_inv_emp, 1 in the limit
  double phi_emp = 0.0;
  double product_closed = 0.0;  // closed-form counterpart, exactly 1
  double phi_closed = 0.0;
};

struct OracleReport {
  double c = 0.0;
  int p = 0;
  int n = 0;
  std::uint64_t master_seed = 0;
  std::vector<OracleRow> rows;
};

OracleReport oracle_report(double c, int p, std::uint64_t master_seed,
                           const std::vector<double>& alphas);

// Order-statistic index for the (1-alpha) quantile: [p(1-alpha)],
// clamped to [1, p]. Eigenvalues are indexed descending.
int quantile_index(int p, double alpha);

// Default alpha grid 0.05, 0.10, ..., 0.95.
std::vector<double> default_alpha_grid();

}  // namespace eqcov

#endif
