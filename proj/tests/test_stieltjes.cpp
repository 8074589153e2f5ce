#include <doctest.h>

#include <cmath>
#include <complex>

#include "eqcov/models_rng.hpp"
#include "eqcov/spectral_core.hpp"
#include "eqcov/stieltjes.hpp"

using namespace eqcov;
using cd = std::complex<double>;

namespace {

// Quadrature oracle for the MP transform: integrate the density against
// 1/(l - z) with the substitution l = b- + (b+ - b-) sin^2(t), which
// removes the square-root edge singularities.
cd mp_quadrature(cd z, double c, int steps = 20000) {
  auto [lo, hi] = mp_support(Concentration(c));
  double width = hi - lo;
  cd sum = 0.0;
  for (int k = 0; k < steps; ++k) {
    double t = (k + 0.5) * (M_PI / 2.0) / steps;
    double s = std::sin(t);
    double l = lo + width * s * s;
    double jac = width * 2.0 * s * std::cos(t);
    sum += mp_density(l, Concentration(c)) / (l - z) * jac;
  }
  return sum * (M_PI / 2.0 / steps);
}

}  // namespace

TEST_CASE("concentration domain") {
  CHECK_THROWS_AS(Concentration(0.0), DomainError);
  CHECK_THROWS_AS(Concentration(1.0), DomainError);
  CHECK_THROWS_AS(Concentration(-0.3), DomainError);
  CHECK(Concentration::FromDims(800, 400).c == doctest::Approx(0.5));
}

TEST_CASE("empirical transform pole sums") {
  Eigen::VectorXd one(1);
  one << 1.0;
  cd m = stieltjes_empirical(one, cd(0.0, 1.0));
  CHECK(m.real() == doctest::Approx(0.5));
  CHECK(m.imag() == doctest::Approx(0.5));

  Eigen::VectorXd two(2);
  two << 1.0, 3.0;
  CHECK(std::abs(stieltjes_empirical(two, cd(2.0, 0.0))) < 1e-15);

  CHECK_THROWS_AS(stieltjes_empirical(two, cd(3.0, 0.0)), DomainError);
}

TEST_CASE("empirical transform is Herglotz with conjugate symmetry") {
  Eigen::VectorXd eigs(4);
  eigs << 5.0, 2.0, 1.0, 0.5;
  for (double re : {-1.0, 0.5, 2.0}) {
    for (double im : {0.1, 1.0, 3.0}) {
      cd z(re, im);
      cd m = stieltjes_empirical(eigs, z);
      CHECK(m.imag() > 0.0);
      cd mc = stieltjes_empirical(eigs, std::conj(z));
      CHECK(std::abs(mc - std::conj(m)) < 1e-15);
    }
  }
}

TEST_CASE("principal value hand sums") {
  Eigen::VectorXd eigs(3);
  eigs << 4.0, 2.0, 1.0;
  CHECK(principal_value(eigs, 1) == doctest::Approx(-1.0 / 6.0));
  CHECK(principal_value(eigs, 0) == doctest::Approx(-5.0 / 18.0));

  Eigen::VectorXd single(1);
  single << 2.0;
  CHECK(principal_value(single, 0) == 0.0);
}

TEST_CASE("principal values sum to zero by antisymmetry") {
  Eigen::VectorXd eigs = realize_spectrum(SpectrumSpec::Geometric(8, 1.7));
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += principal_value(eigs, i);
  CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("principal value rejects clustered spectra") {
  Eigen::VectorXd eigs(3);
  eigs << 4.0, 1.0 + 1e-13, 1.0;
  CHECK_THROWS_AS(principal_value(eigs, 1), GapError);
}

TEST_CASE("mp transform solves its defining equation") {
  // m = 1 / (1 - c - c z m - z) for the point-mass population spectrum.
  for (double c : {0.1, 0.5, 0.9}) {
    for (cd z : {cd(1, 1), cd(0.5, 0.2), cd(-1, 0.5), cd(3, 2)}) {
      cd m = mp_stieltjes(z, Concentration(c));
      cd rhs = 1.0 / (1.0 - c - c * z * m - z);
      CHECK(std::abs(m - rhs) < 1e-12);
      CHECK(m.imag() > 0.0);
    }
  }
}

TEST_CASE("mp transform matches the quadrature oracle") {
  cd m = mp_stieltjes(cd(1, 1), Concentration(0.5));
  cd q = mp_quadrature(cd(1, 1), 0.5);
  CHECK(std::abs(m - q) < 1e-6);
}

TEST_CASE("mp support and density") {
  auto [lo, hi] = mp_support(Concentration(0.5));
  double r = std::sqrt(0.5);
  CHECK(lo == doctest::Approx((1 - r) * (1 - r)));
  CHECK(hi == doctest::Approx((1 + r) * (1 + r)));

  // Density integrates to one.
  int steps = 20000;
  double mass = 0.0;
  for (int k = 0; k < steps; ++k) {
    double t = (k + 0.5) * (M_PI / 2.0) / steps;
    double s = std::sin(t);
    double l = lo + (hi - lo) * s * s;
    mass += mp_density(l, Concentration(0.5)) * (hi - lo) * 2.0 * s * std::cos(t);
  }
  mass *= M_PI / 2.0 / steps;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mp real boundary values") {
  Concentration c(0.5);
  CHECK(mp_real_boundary(1.0, c) == doctest::Approx(-0.5));
  CHECK(mp_real_boundary(2.0, c) == doctest::Approx(-0.75));
  CHECK_THROWS_AS(mp_real_boundary(0.01, c), DomainError);
  CHECK_THROWS_AS(mp_real_boundary(4.0, c), DomainError);

  // Vertical limit of the full transform agrees inside the bulk.
  for (double l : {0.5, 1.0, 2.0}) {
    cd m = mp_stieltjes(cd(l, 1e-6), c);
    CHECK(std::abs(m.real() - mp_real_boundary(l, c)) < 1e-4);
  }
}

TEST_CASE("oracle functionals are 1 for the identity population") {
  Concentration c(0.5);
  for (double l : {0.2, 0.7, 1.0, 1.8, 2.5}) {
    double re = mp_real_boundary(l, c);
    cd m(re, M_PI * mp_density(l, c));
    CHECK(oracle_delta(l, m, c) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(oracle_delta_inv(l, re, c) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(phi_asymptotic(l, re, c) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(oracle_delta(l, m, c) * oracle_delta_inv(l, re, c) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("oracle functional hand values and the factor-of-two split") {
  Concentration c(0.5);
  CHECK(oracle_delta_inv(1.0, -0.5, c) == doctest::Approx(1.0));
  CHECK(phi_asymptotic(1.0, -0.5, c) == doctest::Approx(1.0));
  CHECK(quantile_map(1.0, -0.5, c) == doctest::Approx(4.0 / 3.0));
  CHECK(quantile_map(1.0, -0.5, c) != phi_asymptotic(1.0, -0.5, c));

  // Real-argument reduction: delta with a real boundary value.
  cd m_real(-0.5, 0.0);
  double expect = 1.0 / ((1 - 0.5 - 0.5 * 1.0 * (-0.5)) *
                         (1 - 0.5 - 0.5 * 1.0 * (-0.5)));
  CHECK(oracle_delta(1.0, m_real, c) == doctest::Approx(expect));
  CHECK(oracle_delta(1.0, m_real, c) > 0.0);
}

TEST_CASE("quantile map closed form for the identity population") {
  Concentration c(0.5);
  for (double l : {0.5, 1.0, 2.0}) {
    double re = mp_real_boundary(l, c);
    CHECK(quantile_map(l, re, c) ==
          doctest::Approx(2.0 * l / (1.0 - 0.5 + l)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(quantile_map(1.0, 10.0, c), DomainError);
}

TEST_CASE("small-c reductions") {
  Concentration c(1e-9);
  CHECK(phi_asymptotic(2.0, -0.5, c) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(quantile_map(2.0, -0.5, c) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("smoothed boundary tracks the MP closed form") {
  // One p=600 draw from the identity population at c = 0.5.
  const int p = 600, n = 1200;
  ObservationMatrix data =
      sample_gaussian(Eigen::VectorXd::Ones(p), std::nullopt, n, {21, 0});
  Eigen::VectorXd eigs = eigh(sample_covariance(data)).values;
  Concentration c(0.5);
  for (double l : {0.6, 1.0, 1.8}) {
    cd m = smoothed_boundary(eigs, l);
    CHECK(std::abs(m.real() - mp_real_boundary(l, c)) < 0.1);
    CHECK(std::abs(m.imag() - M_PI * mp_density(l, c)) < 0.25);
  }
}
