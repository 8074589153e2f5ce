#include "eqcov/spectral_core.hpp"

#include <cmath>
#include <string>

namespace eqcov {

namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw InvalidDataError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidDataError("SymmetricMatrix: matrix must be square, dim >= 1");
  }
  check_finite(m, "SymmetricMatrix");
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::Identity(int p) {
  return SymmetricMatrix(Eigen::MatrixXd::Identity(p, p));
}

ObservationMatrix::ObservationMatrix(const Eigen::MatrixXd& rows) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    throw InvalidDataError("ObservationMatrix: need n >= 1, p >= 1");
  }
  check_finite(rows, "ObservationMatrix");
  rows_ = rows;
}

SymmetricMatrix sample_scatter(const ObservationMatrix& data) {
  const Eigen::MatrixXd& x = data.rows();
  return SymmetricMatrix(x.transpose() * x);
}

SymmetricMatrix sample_covariance(const ObservationMatrix& data) {
  const Eigen::MatrixXd& x = data.rows();
  return SymmetricMatrix((x.transpose() * x) / static_cast<double>(data.n()));
}

SpectralDecomposition eigh(const SymmetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.mat());
  if (solver.info() != Eigen::Success) {
    // Residual of the failed factorization, for the error report.
    double residual = (m.mat() * solver.eigenvectors() -
                       solver.eigenvectors() *
                           solver.eigenvalues().asDiagonal().toDenseMatrix())
                          .norm();
    throw NumericalError("eigh: eigensolver failed to converge", residual);
  }

  const int p = m.dim();
  SpectralDecomposition out;
  out.values.resize(p);
  out.vectors.resize(p, p);

  // Eigen returns ascending order; flip to descending.
  for (int k = 0; k < p; ++k) {
    out.values[k] = solver.eigenvalues()[p - 1 - k];
    out.vectors.col(k) = solver.eigenvectors().col(p - 1 - k);
  }

  // Sign convention: first nonzero component of each eigenvector >= 0.
  for (int k = 0; k < p; ++k) {
    for (int r = 0; r < p; ++r) {
      double v = out.vectors(r, k);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) out.vectors.col(k) = -out.vectors.col(k);
        break;
      }
    }
  }
  return out;
}

SymmetricMatrix assemble(const SpectralDecomposition& decomp,
                         const Eigen::VectorXd& shrunk) {
  const int p = decomp.dim();
  if (shrunk.size() != p) {
    throw InvalidDataError("assemble: shrunk spectrum has wrong length");
  }
  for (int i = 0; i < p; ++i) {
    if (!std::isfinite(shrunk[i]) || shrunk[i] <= 0.0) {
      throw DomainError("assemble: shrunk eigenvalue " + std::to_string(i) +
                        " not strictly positive; estimate must stay in the "
                        "positive-definite cone");
    }
  }
  Eigen::MatrixXd m =
      decomp.vectors * shrunk.asDiagonal() * decomp.vectors.transpose();
  return SymmetricMatrix(m);
}

int clustered_pair(const Eigen::VectorXd& values) {
  const int p = static_cast<int>(values.size());
  if (p < 2) return -1;
  double spread = values[0] - values[p - 1];
  double threshold = kClusteredRelGap * spread;
  for (int i = 0; i + 1 < p; ++i) {
    if (values[i] - values[i + 1] < threshold || spread == 0.0) return i;
  }
  return -1;
}

}  // namespace eqcov
