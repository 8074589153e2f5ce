#ifndef EQCOV_SHRINKERS_HPP
#define EQCOV_SHRINKERS_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqcov/errors.hpp"
#include "eqcov/spectral_core.hpp"

namespace eqcov {

enum class EstimatorKind {
  sample,
  stein_raw,
  stein_iso,
  stein_dispersed,
  tsai,
  oracle_projection,
  oracle_projection_inv,
};

const char* kind_name(EstimatorKind kind);
EstimatorKind parse_kind(const std::string& name);
bool kind_needs_oracle(EstimatorKind kind);

// Shrunk eigenvalues plus per-index diagnostics.
struct ShrunkSpectrum {
  Eigen::VectorXd values;
  EstimatorKind kind = EstimatorKind::sample;
  std::vector<bool> negative_denominator;  // raw Stein pathology flags
  std::vector<bool> isotonized;            // indices altered by stein_iso
};

// Identity rule: the sample eigenvalues themselves.
ShrunkSpectrum shrink_sample(const Eigen::VectorXd& l);

// Stein's rule phi_i = n l_i / (n - p + 1 - 2 l_i sum_{j!=i} 1/(l_j - l_i)).
// Values may come out negative or non-monotone; they are flagged, not fixed.
ShrunkSpectrum shrink_stein_raw(const Eigen::VectorXd& l, int n);

// Stein's rule followed by a positivity clamp (floor 1e-8 l_i) and
// unweighted pool-adjacent-violators projection onto the descending cone.
ShrunkSpectrum shrink_stein_iso(const Eigen::VectorXd& l, int n);

// Dispersed-spectrum approximation phi0_i = n l_i / (n + p - 2i + 1)
// (i 1-based). Always positive and order preserving when n > p.
ShrunkSpectrum shrink_stein_dispersed(const Eigen::VectorXd& l, int n);

// Quantile-map rule psi_i = n l_i / (n - p + 1 - l_i sum_{j!=i} 1/(l_j - l_i)):
// Stein's formula without the factor 2. Fails on nonpositive denominators.
ShrunkSpectrum shrink_tsai(const Eigen::VectorXd& l, int n);

// Simulation-only oracle: diagonal of U^T Sigma U (or U^T Sigma^{-1} U).
Eigen::VectorXd oracle_projection(const Eigen::MatrixXd& u,
                                  const SymmetricMatrix& sigma, bool inverse);

// Dispatch on kind. Oracle kinds require the true Sigma.
ShrunkSpectrum shrink(EstimatorKind kind, const SpectralDecomposition& decomp,
                      int n, const SymmetricMatrix* oracle_sigma = nullptr);

}  // namespace eqcov

#endif
