#ifndef EQCOV_STIELTJES_HPP
#define EQCOV_STIELTJES_HPP

#include <complex>

#include <Eigen/Dense>

#include "eqcov/errors.hpp"

namespace eqcov {

// Limiting dimension-to-sample ratio c = lim p/n, restricted to (0, 1).
struct Concentration {
  double c;

  explicit Concentration(double value) : c(value) {
    if (!(c > 0.0 && c < 1.0)) {
      throw DomainError("Concentration: c must lie in (0, 1)");
    }
  }
  static Concentration FromDims(int n, int p) {
    return Concentration(static_cast<double>(p) / static_cast<double>(n));
  }
};

// (1/p) sum_i 1/(l_i - z); the resolvent trace of any matrix with
// spectrum eigs. Real z must be off-spectrum.
std::complex<double> stieltjes_empirical(const Eigen::VectorXd& eigs,
                                         std::complex<double> z);

// Cauchy principal value at sample eigenvalue i (0-based):
// (1/p) sum_{j != i} 1/(l_j - l_i). eigs must be descending with gaps
// around i above the clustered threshold.
double principal_value(const Eigen::VectorXd& eigs, int i);

// Closed-form Stieltjes transform of the Marchenko-Pastur law
// (population spectrum = point mass at 1), branch with Im > 0 on C+.
std::complex<double> mp_stieltjes(std::complex<double> z, Concentration c);

// Support edges (1 -+ sqrt(c))^2 of the MP law.
std::pair<double, double> mp_support(Concentration c);

// MP density sqrt((b+ - l)(l - b-)) / (2 pi c l) inside the support.
double mp_density(double l, Concentration c);

// Real part of the boundary value of the MP transform inside the open
// bulk: (1 - c - l) / (2 c l).
double mp_real_boundary(double l, Concentration c);

// delta(l) = l / |1 - c - c l m(l)|^2, m(l) the complex boundary value.
double oracle_delta(double l, std::complex<double> m_boundary, Concentration c);

// delta^{(-1)}(l) = (1 - c - 2 c l Re m(l)) / l. Not the reciprocal of
// delta(l) in general.
double oracle_delta_inv(double l, double m_re, Concentration c);

// phi(l) = l / (1 - c - 2 c l Re m(l)) = 1 / delta^{(-1)}(l).
double phi_asymptotic(double l, double m_re, Concentration c);

// Quantile map gamma(l) = l / (1 - c - c l Re m(l)). Single factor of c,
// unlike the factor 2 in phi_asymptotic.
double quantile_map(double l, double m_re, Concentration c);

// Smoothed estimate of the complex boundary value m(x) from a sample
// spectrum: Epanechnikov kernel with proportional bandwidth h_j = h l_j,
// real part by the kernel's closed-form Hilbert transform, imaginary
// part pi times the kernel density. bandwidth <= 0 selects p^{-1/3}.
// The raw per-eigenvalue principal value does not converge pointwise
// (nearest-neighbour gaps fluctuate at order one); this estimator does.
std::complex<double> smoothed_boundary(const Eigen::VectorXd& eigs, double x,
                                       double bandwidth = 0.0);

}  // namespace eqcov

#endif
