#include "eqcov/risk_lab.hpp"

#include <cmath>
#include <limits>
#include <thread>

namespace eqcov {

namespace {

// log det of a positive definite matrix via Cholesky; throws on non-PD.
double logdet_pd(const SymmetricMatrix& m, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m.mat());
  if (llt.info() != Eigen::Success) {
    throw DomainError(std::string(what) + ": matrix not positive definite");
  }
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    double d = llt.matrixLLT()(i, i);
    if (!(d > 0.0)) {
      throw DomainError(std::string(what) + ": matrix not positive definite");
    }
    s += std::log(d);
  }
  return 2.0 * s;
}

double excess(double x) { return x - std::log(x) - 1.0; }

}  // namespace

LossValue stein_loss(const SymmetricMatrix& est, const SymmetricMatrix& sigma,
                     bool normalized) {
  if (est.dim() != sigma.dim()) {
    throw DomainError("stein_loss: dimension mismatch");
  }
  const int p = sigma.dim();
  Eigen::LLT<Eigen::MatrixXd> llt_sigma(sigma.mat());
  if (llt_sigma.info() != Eigen::Success) {
    throw DomainError("stein_loss: sigma not positive definite");
  }
  double trace = llt_sigma.solve(est.mat()).trace();
  double logdet = logdet_pd(est, "stein_loss") - logdet_pd(sigma, "stein_loss");
  double value = trace - logdet - p;
  if (normalized) value /= p;
  return {value, normalized};
}

LossValue eigen_loss(const Eigen::VectorXd& psi, const Eigen::VectorXd& gamma,
                     bool normalized) {
  const int p = static_cast<int>(psi.size());
  if (gamma.size() != p || p < 1) {
    throw DomainError("eigen_loss: length mismatch");
  }
  double value = 0.0;
  for (int i = 0; i < p; ++i) {
    if (!(psi[i] > 0.0) || !(gamma[i] > 0.0)) {
      throw DomainError("eigen_loss: entries must be positive");
    }
    value += excess(psi[i] / gamma[i]);
  }
  if (normalized) value /= p;
  return {value, normalized};
}

DispersedGap gap_stein_dispersed(int n, int p) {
  if (!(n > p && p >= 1)) {
    throw DomainError("gap_stein_dispersed: requires n > p >= 1");
  }
  DispersedGap gap{0.0, 0.0, 0.0};
  for (int i = 1; i <= p; ++i) {
    gap.direct += excess(static_cast<double>(n) / (n + p - 2 * i + 1));
  }
  for (int i = 1; i <= p / 2; ++i) {
    double q = static_cast<double>(p - 2 * i + 1) / n;
    double v = 1.0 / (1.0 - q * q);
    gap.via_v += 2.0 * v - std::log(v) - 2.0;
    gap.lower_bound += 2.0 * (v - std::log(v) - 1.0);
  }
  return gap;
}

DominanceGaps dominance_gaps(int n, int p) {
  if (!(n > p && p >= 1)) {
    throw DomainError("dominance_gaps: requires n > p >= 1");
  }
  DominanceGaps gaps{0.0, 0.0};
  for (int i = 1; i <= p; ++i) {
    double x = static_cast<double>(n - i + 1) / (n + p - 2 * i + 1);
    double y = static_cast<double>(n - i + 1) / n;
    gaps.stein0_vs_tsai += excess(x);
    gaps.sample_vs_tsai += excess(y);
  }
  gaps.stein0_vs_tsai /= p;
  gaps.sample_vs_tsai /= p;
  return gaps;
}

void SimulationConfig::validate() const {
  if (p < 1) throw ConfigError("config.p: must be >= 1");
  if (n <= p) throw ConfigError("config.n: must exceed p");
  if (trials < 2) throw ConfigError("config.trials: must be >= 2");
  if (estimators.empty()) throw ConfigError("config.estimators: list is empty");
  if (spectrum.p != p) {
    throw ConfigError("config.spectrum.p: must match config.p");
  }
  if (threads < 1) throw ConfigError("config.threads: must be >= 1");
  realize_spectrum(spectrum);  // surfaces spectrum field errors
}

namespace {

// Stream id reserved for the population rotation so trial streams 0..T-1
// stay untouched.
constexpr std::uint64_t kRotationStream = 1ull << 32;

}  // namespace

RiskTable mc_risk(const SimulationConfig& config) {
  config.validate();
  const int p = config.p;
  const int n = config.n;
  const int trials = config.trials;
  const int nkinds = static_cast<int>(config.estimators.size());

  Eigen::VectorXd gamma = realize_spectrum(config.spectrum);
  std::optional<Eigen::MatrixXd> rotation;
  if (config.rotate_population) {
    rotation = random_orthogonal(p, {config.master_seed, kRotationStream});
  }
  Eigen::MatrixXd sigma_mat = gamma.asDiagonal();
  if (rotation) sigma_mat = *rotation * sigma_mat * rotation->transpose();
  SymmetricMatrix sigma(sigma_mat);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> losses(trials,
                                          std::vector<double>(nkinds, nan));
  std::vector<std::vector<bool>> failed(trials,
                                        std::vector<bool>(nkinds, false));

  auto run_trial = [&](int t) {
    ObservationMatrix data = sample_gaussian(
        gamma, rotation, n, {config.master_seed, static_cast<std::uint64_t>(t)});
    SymmetricMatrix s = sample_covariance(data);
    SpectralDecomposition decomp = eigh(s);
    for (int k = 0; k < nkinds; ++k) {
      try {
        ShrunkSpectrum shrunk =
            shrink(config.estimators[k], decomp, n, &sigma);
        SymmetricMatrix est = assemble(decomp, shrunk.values);
        // Always the full-matrix loss; no eigenvector-alignment shortcut.
        losses[t][k] = stein_loss(est, sigma, config.normalized).value;
      } catch (const Error&) {
        failed[t][k] = true;
      }
    }
  };

  if (config.threads <= 1) {
    for (int t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> pool;
    int nthreads = std::min(config.threads, trials);
    for (int w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        for (int t = w; t < trials; t += nthreads) run_trial(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  RiskTable table;
  table.config = config;
  for (int k = 0; k < nkinds; ++k) {
    RiskRow row;
    row.kind = config.estimators[k];
    row.trials = trials;
    for (int t = 0; t < trials; ++t) {
      if (failed[t][k]) ++row.failures;
    }
    if (row.failures > 0) {
      row.mean_risk = nan;
      row.std_error = nan;
    } else {
      double mean = 0.0;
      for (int t = 0; t < trials; ++t) mean += losses[t][k];
      mean /= trials;
      double var = 0.0;
      for (int t = 0; t < trials; ++t) {
        double d = losses[t][k] - mean;
        var += d * d;
      }
      var /= (trials - 1);
      row.mean_risk = mean;
      row.std_error = std::sqrt(var / trials);
    }
    table.rows.push_back(row);
  }
  if (n > p) {
    table.dispersed_gap = gap_stein_dispersed(n, p);
    table.dominance = dominance_gaps(n, p);
  }
  return table;
}

EigenRatioReport eigen_ratio_check(int n, int p, const SpectrumSpec& spectrum,
                                   int trials, std::uint64_t master_seed) {
  if (trials < 2) throw ConfigError("eigen_ratio_check: trials must be >= 2");
  Eigen::VectorXd gamma = realize_spectrum(spectrum);
  if (static_cast<int>(gamma.size()) != p) {
    throw ConfigError("eigen_ratio_check: spectrum.p must match p");
  }

  EigenRatioReport report;
  report.n = n;
  report.p = p;
  report.trials = trials;
  report.master_seed = master_seed;
  for (int i = 0; i + 1 < p; ++i) {
    if (gamma[i] / gamma[i + 1] < 100.0) report.dispersed_regime = false;
  }

  Eigen::MatrixXd ratios(trials, p);
  for (int t = 0; t < trials; ++t) {
    ObservationMatrix data = sample_gaussian(
        gamma, std::nullopt, n, {master_seed, static_cast<std::uint64_t>(t)});
    SpectralDecomposition decomp = eigh(sample_covariance(data));
    for (int i = 0; i < p; ++i) ratios(t, i) = decomp.values[i] / gamma[i];
  }

  for (int i = 0; i < p; ++i) {
    EigenRatioRow row;
    row.index = i + 1;
    row.predicted = static_cast<double>(n - i) / n;  // (n - (i+1) + 1)/n
    row.mean_ratio = ratios.col(i).mean();
    double var = (ratios.col(i).array() - row.mean_ratio).square().sum() /
                 (trials - 1);
    row.std_error = std::sqrt(var / trials);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace eqcov
