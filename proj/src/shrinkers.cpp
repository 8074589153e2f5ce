#include "eqcov/shrinkers.hpp"

#include <cmath>

#include "eqcov/stieltjes.hpp"

namespace eqcov {

const char* kind_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::sample: return "sample";
    case EstimatorKind::stein_raw: return "stein_raw";
    case EstimatorKind::stein_iso: return "stein_iso";
    case EstimatorKind::stein_dispersed: return "stein_dispersed";
    case EstimatorKind::tsai: return "tsai";
    case EstimatorKind::oracle_projection: return "oracle_projection";
    case EstimatorKind::oracle_projection_inv: return "oracle_projection_inv";
  }
  return "unknown";
}

EstimatorKind parse_kind(const std::string& name) {
  for (EstimatorKind kind :
       {EstimatorKind::sample, EstimatorKind::stein_raw, EstimatorKind::stein_iso,
        EstimatorKind::stein_dispersed, EstimatorKind::tsai,
        EstimatorKind::oracle_projection, EstimatorKind::oracle_projection_inv}) {
    if (name == kind_name(kind)) return kind;
  }
  throw ConfigError("unknown estimator kind: " + name);
}

bool kind_needs_oracle(EstimatorKind kind) {
  return kind == EstimatorKind::oracle_projection ||
         kind == EstimatorKind::oracle_projection_inv;
}

namespace {

void check_spectrum(const Eigen::VectorXd& l) {
  const int p = static_cast<int>(l.size());
  if (p < 1) throw DomainError("shrink: empty spectrum");
  for (int i = 0; i < p; ++i) {
    if (!std::isfinite(l[i]) || !(l[i] > 0.0)) {
      throw DomainError("shrink: sample eigenvalues must be positive");
    }
    if (i > 0 && l[i] > l[i - 1]) {
      throw DomainError("shrink: sample eigenvalues must be descending");
    }
  }
}

ShrunkSpectrum make_result(EstimatorKind kind, Eigen::VectorXd values) {
  ShrunkSpectrum out;
  out.kind = kind;
  out.values = std::move(values);
  out.negative_denominator.assign(out.values.size(), false);
  out.isotonized.assign(out.values.size(), false);
  return out;
}

// Shared core of the Stein and quantile-map rules; gap_factor is 2 for
// Stein and 1 for the quantile-map estimator.
ShrunkSpectrum gap_sum_rule(EstimatorKind kind, const Eigen::VectorXd& l, int n,
                            double gap_factor) {
  check_spectrum(l);
  const int p = static_cast<int>(l.size());
  if (n <= p) throw DomainError(std::string(kind_name(kind)) + ": requires n > p");

  ShrunkSpectrum out = make_result(kind, Eigen::VectorXd(p));
  for (int i = 0; i < p; ++i) {
    double gap_sum = static_cast<double>(p) * principal_value(l, i);
    double denom = n - p + 1 - gap_factor * l[i] * gap_sum;
    if (denom == 0.0) {
      throw SingularityError(std::string(kind_name(kind)) +
                             ": zero denominator at index " + std::to_string(i));
    }
    if (denom < 0.0) {
      if (kind == EstimatorKind::tsai) {
        throw DomainError("tsai: nonpositive denominator at index " +
                          std::to_string(i) + " (denominator " +
                          std::to_string(denom) + ")");
      }
      out.negative_denominator[i] = true;
    }
    out.values[i] = n * l[i] / denom;
  }
  return out;
}

// Unweighted PAVA projection onto the nonincreasing cone.
Eigen::VectorXd pava_descending(const Eigen::VectorXd& v) {
  const int p = static_cast<int>(v.size());
  std::vector<double> mean;
  std::vector<int> count;
  for (int i = 0; i < p; ++i) {
    mean.push_back(v[i]);
    count.push_back(1);
    while (mean.size() > 1 && mean[mean.size() - 2] < mean.back()) {
      double m = (mean[mean.size() - 2] * count[count.size() - 2] +
                  mean.back() * count.back()) /
                 (count[count.size() - 2] + count.back());
      count[count.size() - 2] += count.back();
      mean[mean.size() - 2] = m;
      mean.pop_back();
      count.pop_back();
    }
  }
  Eigen::VectorXd out(p);
  int pos = 0;
  for (size_t b = 0; b < mean.size(); ++b) {
    for (int k = 0; k < count[b]; ++k) out[pos++] = mean[b];
  }
  return out;
}

}  // namespace

ShrunkSpectrum shrink_sample(const Eigen::VectorXd& l) {
  check_spectrum(l);
  return make_result(EstimatorKind::sample, l);
}

ShrunkSpectrum shrink_stein_raw(const Eigen::VectorXd& l, int n) {
  return gap_sum_rule(EstimatorKind::stein_raw, l, n, 2.0);
}

ShrunkSpectrum shrink_stein_iso(const Eigen::VectorXd& l, int n) {
  ShrunkSpectrum raw = gap_sum_rule(EstimatorKind::stein_iso, l, n, 2.0);
  const int p = static_cast<int>(l.size());
  Eigen::VectorXd clamped(p);
  for (int i = 0; i < p; ++i) {
    clamped[i] = std::max(raw.values[i], 1e-8 * l[i]);
  }
  Eigen::VectorXd pooled = pava_descending(clamped);
  ShrunkSpectrum out = make_result(EstimatorKind::stein_iso, pooled);
  out.negative_denominator = raw.negative_denominator;
  for (int i = 0; i < p; ++i) {
    out.isotonized[i] = pooled[i] != raw.values[i];
  }
  return out;
}

ShrunkSpectrum shrink_stein_dispersed(const Eigen::VectorXd& l, int n) {
  check_spectrum(l);
  const int p = static_cast<int>(l.size());
  ShrunkSpectrum out = make_result(EstimatorKind::stein_dispersed,
                                   Eigen::VectorXd(p));
  for (int i = 0; i < p; ++i) {
    int denom = n + p - 2 * (i + 1) + 1;  // i is 0-based here
    if (denom <= 0) {
      throw DomainError("stein_dispersed: nonpositive multiplier at index " +
                        std::to_string(i));
    }
    out.values[i] = static_cast<double>(n) * l[i] / denom;
  }
  return out;
}

ShrunkSpectrum shrink_tsai(const Eigen::VectorXd& l, int n) {
  return gap_sum_rule(EstimatorKind::tsai, l, n, 1.0);
}

Eigen::VectorXd oracle_projection(const Eigen::MatrixXd& u,
                                  const SymmetricMatrix& sigma, bool inverse) {
  const int p = sigma.dim();
  if (u.rows() != p || u.cols() != p) {
    throw DomainError("oracle_projection: U has wrong shape");
  }
  if (!inverse) {
    return (u.transpose() * sigma.mat() * u).diagonal();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sigma.mat());
  if (llt.info() != Eigen::Success) {
    throw DomainError("oracle_projection: sigma not positive definite");
  }
  return (u.transpose() * llt.solve(u)).diagonal();
}

ShrunkSpectrum shrink(EstimatorKind kind, const SpectralDecomposition& decomp,
                      int n, const SymmetricMatrix* oracle_sigma) {
  switch (kind) {
    case EstimatorKind::sample:
      return shrink_sample(decomp.values);
    case EstimatorKind::stein_raw:
      return shrink_stein_raw(decomp.values, n);
    case EstimatorKind::stein_iso:
      return shrink_stein_iso(decomp.values, n);
    case EstimatorKind::stein_dispersed:
      return shrink_stein_dispersed(decomp.values, n);
    case EstimatorKind::tsai:
      return shrink_tsai(decomp.values, n);
    case EstimatorKind::oracle_projection:
    case EstimatorKind::oracle_projection_inv: {
      if (oracle_sigma == nullptr) {
        throw ConfigError(std::string(kind_name(kind)) +
                          " requires the true covariance matrix");
      }
      bool inverse = kind == EstimatorKind::oracle_projection_inv;
      Eigen::VectorXd diag =
          oracle_projection(decomp.vectors, *oracle_sigma, inverse);
      // The inverse oracle estimates Sigma's spectrum as 1/a*_i.
      if (inverse) diag = diag.cwiseInverse();
      return make_result(kind, diag);
    }
  }
  throw ConfigError("shrink: unknown estimator kind");
}

}  // namespace eqcov
