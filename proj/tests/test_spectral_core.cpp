#include <doctest.h>

#include <cmath>

#include "eqcov/models_rng.hpp"
#include "eqcov/spectral_core.hpp"

using namespace eqcov;

namespace {

Eigen::MatrixXd rows2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("sample_scatter outer-product sums") {
  Eigen::MatrixXd one_row(1, 2);
  one_row << 2, 0;
  SymmetricMatrix a = sample_scatter(ObservationMatrix(one_row));
  CHECK(a(0, 0) == doctest::Approx(4.0));
  CHECK(a(0, 1) == doctest::Approx(0.0));
  CHECK(a(1, 1) == doctest::Approx(0.0));

  SymmetricMatrix b = sample_scatter(ObservationMatrix(rows2(1, 0, 0, 1)));
  CHECK(b.mat().isApprox(Eigen::MatrixXd::Identity(2, 2)));

  SymmetricMatrix c = sample_scatter(ObservationMatrix(rows2(1, 1, 1, -1)));
  CHECK(c(0, 0) == doctest::Approx(2.0));
  CHECK(c(0, 1) == doctest::Approx(0.0));
  CHECK(c(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("sample_covariance divides by n") {
  SymmetricMatrix s = sample_covariance(ObservationMatrix(rows2(1, 1, 1, -1)));
  CHECK(s.mat().isApprox(Eigen::MatrixXd::Identity(2, 2)));

  Eigen::MatrixXd one_row(1, 2);
  one_row << 2, 0;
  SymmetricMatrix t = sample_covariance(ObservationMatrix(one_row));
  CHECK(t(0, 0) == doctest::Approx(4.0));

  SymmetricMatrix z = sample_covariance(ObservationMatrix(Eigen::MatrixXd::Zero(3, 2)));
  CHECK(z.mat().isZero());
}

TEST_CASE("non-finite observations are rejected") {
  Eigen::MatrixXd m(1, 2);
  m << 1.0, std::nan("");
  CHECK_THROWS_AS(ObservationMatrix{m}, InvalidDataError);
}

TEST_CASE("eigh on diagonal and closed-form 2x2 inputs") {
  SpectralDecomposition d = eigh(SymmetricMatrix(rows2(3, 0, 0, 1)));
  CHECK(d.values[0] == doctest::Approx(3.0));
  CHECK(d.values[1] == doctest::Approx(1.0));
  CHECK(d.vectors.cwiseAbs().isApprox(Eigen::MatrixXd::Identity(2, 2)));

  SpectralDecomposition e = eigh(SymmetricMatrix(rows2(2, 1, 1, 2)));
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(e.vectors(0, 0) == doctest::Approx(s));
  CHECK(e.vectors(1, 0) == doctest::Approx(s));
  CHECK(e.vectors(0, 1) == doctest::Approx(s));
  CHECK(e.vectors(1, 1) == doctest::Approx(-s));
}

TEST_CASE("eigh handles the degenerate identity spectrum") {
  SpectralDecomposition d = eigh(SymmetricMatrix::Identity(4));
  for (int i = 0; i < 4; ++i) CHECK(d.values[i] == doctest::Approx(1.0));
  Eigen::MatrixXd recon = d.vectors * d.values.asDiagonal() * d.vectors.transpose();
  CHECK((recon - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("eigh invariants on random symmetric matrices") {
  for (int trial = 0; trial < 20; ++trial) {
    int p = 2 + trial % 6;
    GaussianStream stream({7, static_cast<std::uint64_t>(trial)});
    Eigen::MatrixXd g(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) g(i, j) = stream.normal();
    }
    SymmetricMatrix m(g);
    SpectralDecomposition d = eigh(m);

    Eigen::MatrixXd gram = d.vectors.transpose() * d.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(p, p)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 0; i + 1 < p; ++i) CHECK(d.values[i] >= d.values[i + 1]);
    for (int j = 0; j < p; ++j) {
      int k = 0;
      while (k < p && std::abs(d.vectors(k, j)) <= 1e-12) ++k;
      if (k < p) CHECK(d.vectors(k, j) >= 0.0);
    }
    Eigen::MatrixXd recon = d.vectors * d.values.asDiagonal() * d.vectors.transpose();
    CHECK((recon - m.mat()).norm() <= 1e-9 * (m.mat().norm() + 1.0));
  }
}

TEST_CASE("assemble builds U diag(shrunk) U^T") {
  SpectralDecomposition id;
  id.vectors = Eigen::MatrixXd::Identity(2, 2);
  id.values = Eigen::Vector2d(5, 2);
  SymmetricMatrix m = assemble(id, Eigen::Vector2d(5, 2));
  CHECK(m(0, 0) == doctest::Approx(5.0));
  CHECK(m(1, 1) == doctest::Approx(2.0));
  CHECK(m(0, 1) == doctest::Approx(0.0));

  // 45-degree rotation with spectrum (3, 1) closes to [[2,1],[1,2]].
  const double s = 1.0 / std::sqrt(2.0);
  SpectralDecomposition rot;
  rot.vectors = rows2(s, s, s, -s);
  rot.values = Eigen::Vector2d(3, 1);
  SymmetricMatrix r = assemble(rot, Eigen::Vector2d(3, 1));
  CHECK(r(0, 0) == doctest::Approx(2.0));
  CHECK(r(0, 1) == doctest::Approx(1.0));
  CHECK(r(1, 0) == doctest::Approx(1.0));
  CHECK(r(1, 1) == doctest::Approx(2.0));

  CHECK_THROWS_AS(assemble(rot, Eigen::Vector2d(3, -1)), DomainError);
  CHECK_THROWS_AS(assemble(rot, Eigen::Vector2d(3, 0)), DomainError);
}

TEST_CASE("assemble round trip reconstructs the source") {
  GaussianStream stream({11, 0});
  Eigen::MatrixXd g(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) g(i, j) = stream.normal();
  }
  SymmetricMatrix m(g);
  SpectralDecomposition d = eigh(m);
  if (clustered_pair(d.values) < 0) {
    Eigen::VectorXd shifted = d.values.array() - d.values.minCoeff() + 1.0;
    SymmetricMatrix pos = assemble(d, shifted);
    SpectralDecomposition d2 = eigh(pos);
    CHECK((d2.values - shifted).cwiseAbs().maxCoeff() < 1e-9 * shifted.maxCoeff());
  }
}

TEST_CASE("sample_covariance is positive semidefinite") {
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd gamma = realize_spectrum(SpectrumSpec::Geometric(4, 3.0));
    ObservationMatrix data =
        sample_gaussian(gamma, std::nullopt, 12, {3, static_cast<std::uint64_t>(trial)});
    SpectralDecomposition d = eigh(sample_covariance(data));
    CHECK(d.values.minCoeff() >= -1e-10 * d.values.maxCoeff());
  }
}

TEST_CASE("clustered_pair flags tight gaps") {
  Eigen::Vector3d separated(4, 2, 1);
  CHECK(clustered_pair(separated) == -1);
  Eigen::Vector3d tight(4, 1 + 1e-12, 1);
  CHECK(clustered_pair(tight) == 1);
}

TEST_CASE("symmetric storage is bitwise symmetric") {
  SymmetricMatrix m(rows2(1.0, 0.3000000001, 0.3, 2.0));
  CHECK(m(0, 1) == m(1, 0));
}
