#ifndef EQCOV_SPECTRAL_CORE_HPP
#define EQCOV_SPECTRAL_CORE_HPP

#include <Eigen/Dense>

#include "eqcov/errors.hpp"

namespace eqcov {

// Relative eigenvalue gap below which a spectrum counts as clustered.
// Gap-dividing operations (principal values, Stein-type shrinkers)
// refuse to run on clustered spectra.
inline constexpr double kClusteredRelGap = 1e-9;

// Dense symmetric matrix. Storage is exactly symmetric: the constructor
// replaces the input by (M + M^T)/2, which makes entries (i,j) and (j,i)
// bitwise equal.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(const Eigen::MatrixXd& m);
  static SymmetricMatrix Identity(int p);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

// Eigenvectors (columns of an orthogonal matrix) and eigenvalues in
// descending order. Each eigenvector's first nonzero component is >= 0.
struct SpectralDecomposition {
  Eigen::MatrixXd vectors;
  Eigen::VectorXd values;

  int dim() const { return static_cast<int>(values.size()); }
};

// n observations of dimension p, one per row.
class ObservationMatrix {
 public:
  explicit ObservationMatrix(const Eigen::MatrixXd& rows);

  int n() const { return static_cast<int>(rows_.rows()); }
  int p() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXd& rows() const { return rows_; }

 private:
  Eigen::MatrixXd rows_;
};

// A = sum_i x_i x_i^T
SymmetricMatrix sample_scatter(const ObservationMatrix& data);

// S = A / n (divisor n; the model has known zero mean)
SymmetricMatrix sample_covariance(const ObservationMatrix& data);

// Symmetric eigendecomposition with descending values and the
// first-nonzero-component-positive sign convention.
SpectralDecomposition eigh(const SymmetricMatrix& m);

// U diag(shrunk) U^T. Entries of shrunk must be finite and > 0.
SymmetricMatrix assemble(const SpectralDecomposition& decomp,
                         const Eigen::VectorXd& shrunk);

// Index i such that the gap values[i] - values[i+1] is below the
// clustered threshold, or -1 if the spectrum is well separated.
// values must be sorted descending.
int clustered_pair(const Eigen::VectorXd& values);

}  // namespace eqcov

#endif
