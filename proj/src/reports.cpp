#include "eqcov/reports.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqcov/spectral_core.hpp"

namespace eqcov {

int quantile_index(int p, double alpha) {
  int i = static_cast<int>(std::floor(p * (1.0 - alpha)));
  return std::clamp(i, 1, p);
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
  return grid;
}

namespace {

Eigen::VectorXd sample_eigenvalues(const Eigen::VectorXd& gamma, int n,
                                   SeedSpec seed) {
  ObservationMatrix data = sample_gaussian(gamma, std::nullopt, n, seed);
  return eigh(sample_covariance(data)).values;
}

int dim_to_n(int p, double c) {
  return static_cast<int>(std::lround(p / c));
}

}  // namespace

StieltjesConvergenceReport stieltjes_convergence(double c,
                                                 const std::vector<int>& dims,
                                                 int seeds,
                                                 std::uint64_t master_seed,
                                                 std::complex<double> z) {
  Concentration conc(c);
  if (seeds < 1) throw ConfigError("stieltjes_convergence: seeds must be >= 1");
  StieltjesConvergenceReport report;
  report.c = c;
  report.z = z;
  report.seeds = seeds;
  report.master_seed = master_seed;

  std::complex<double> m_mp = mp_stieltjes(z, conc);
  for (int p : dims) {
    int n = dim_to_n(p, c);
    std::vector<double> devs;
    for (int s = 0; s < seeds; ++s) {
      std::uint64_t stream =
          (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(s);
      Eigen::VectorXd eigs = sample_eigenvalues(Eigen::VectorXd::Ones(p), n,
                                                {master_seed, stream});
      devs.push_back(std::abs(stieltjes_empirical(eigs, z) - m_mp));
    }
    std::sort(devs.begin(), devs.end());
    double median = seeds % 2 == 1
                        ? devs[seeds / 2]
                        : 0.5 * (devs[seeds / 2 - 1] + devs[seeds / 2]);
    report.rows.push_back({p, n, median});
  }
  return report;
}

QuantileReport quantile_report(double c, int p, const SpectrumSpec& spectrum,
                               std::uint64_t master_seed,
                               const std::vector<double>& alphas) {
  Concentration conc(c);
  Eigen::VectorXd gamma = realize_spectrum(spectrum);
  if (static_cast<int>(gamma.size()) != p) {
    throw ConfigError("quantile_report: spectrum.p must match p");
  }

  QuantileReport report;
  report.c = c;
  report.p = p;
  report.n = dim_to_n(p, c);
  report.master_seed = master_seed;
  report.identity_population =
      spectrum.kind == SpectrumSpec::Kind::identity && spectrum.scale == 1.0;

  Eigen::VectorXd eigs =
      sample_eigenvalues(gamma, report.n, {master_seed, 0});
  for (double alpha : alphas) {
    QuantileRow row;
    row.alpha = alpha;
    row.index = quantile_index(p, alpha);
    row.l_hat = eigs[row.index - 1];
    std::complex<double> m = smoothed_boundary(eigs, row.l_hat);
    row.gamma_map = quantile_map(row.l_hat, m.real(), conc);
    row.phi = phi_asymptotic(row.l_hat, m.real(), conc);
    row.gamma_true = gamma[row.index - 1];
    row.mp_map_closed =
        report.identity_population
            ? 2.0 * row.l_hat / (1.0 - c + row.l_hat)
            : std::numeric_limits<double>::quiet_NaN();
    report.rows.push_back(row);
  }
  return report;
}

OracleReport oracle_report(double c, int p, std::uint64_t master_seed,
                           const std::vector<double>& alphas) {
  Concentration conc(c);
  OracleReport report;
  report.c = c;
  report.p = p;
  report.n = dim_to_n(p, c);
  report.master_seed = master_seed;

  Eigen::VectorXd eigs = sample_eigenvalues(Eigen::VectorXd::Ones(p), report.n,
                                            {master_seed, 0});
  auto [lo, hi] = mp_support(conc);
  for (double alpha : alphas) {
    OracleRow row;
    row.alpha = alpha;
    int idx = quantile_index(p, alpha);
    row.l_hat = eigs[idx - 1];

    std::complex<double> m_emp = smoothed_boundary(eigs, row.l_hat);
    row.delta_emp = oracle_delta(row.l_hat, m_emp, conc);
    row.delta_inv_emp = oracle_delta_inv(row.l_hat, m_emp.real(), conc);
    row.product_emp = row.delta_emp * row.delta_inv_emp;
    row.phi_emp = phi_asymptotic(row.l_hat, m_emp.real(), conc);

    if (row.l_hat > lo && row.l_hat < hi) {
      double re = mp_real_boundary(row.l_hat, conc);
      std::complex<double> m_cl(re, M_PI * mp_density(row.l_hat, conc));
      row.product_closed = oracle_delta(row.l_hat, m_cl, conc) *
                           oracle_delta_inv(row.l_hat, re, conc);
      row.phi_closed = phi_asymptotic(row.l_hat, re, conc);
    } else {
      row.product_closed = std::numeric_limits<double>::quiet_NaN();
      row.phi_closed = std::numeric_limits<double>::quiet_NaN();
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace eqcov
