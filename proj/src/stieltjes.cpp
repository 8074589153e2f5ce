#include "eqcov/stieltjes.hpp"

#include <cmath>
#include <string>

#include "eqcov/spectral_core.hpp"

namespace eqcov {

std::complex<double> stieltjes_empirical(const Eigen::VectorXd& eigs,
                                         std::complex<double> z) {
  const int p = static_cast<int>(eigs.size());
  if (p < 1) throw DomainError("stieltjes_empirical: empty spectrum");
  if (z.imag() == 0.0) {
    for (int i = 0; i < p; ++i) {
      if (eigs[i] == z.real()) {
        throw DomainError(
            "stieltjes_empirical: real z hits eigenvalue " + std::to_string(i));
      }
    }
  }
  std::complex<double> sum = 0.0;
  for (int i = 0; i < p; ++i) sum += 1.0 / (eigs[i] - z);
  return sum / static_cast<double>(p);
}

double principal_value(const Eigen::VectorXd& eigs, int i) {
  const int p = static_cast<int>(eigs.size());
  if (i < 0 || i >= p) throw DomainError("principal_value: index out of range");
  if (p == 1) return 0.0;

  double spread = eigs[0] - eigs[p - 1];
  double threshold = kClusteredRelGap * spread;
  double sum = 0.0;
  for (int j = 0; j < p; ++j) {
    if (j == i) continue;
    double gap = std::abs(eigs[j] - eigs[i]);
    if (gap <= threshold) {
      throw GapError("principal_value: clustered spectrum, eigenvalues " +
                         std::to_string(std::min(i, j)) + " and " +
                         std::to_string(std::max(i, j)) + " nearly coincide",
                     std::min(i, j), std::max(i, j));
    }
    sum += 1.0 / (eigs[j] - eigs[i]);
  }
  return sum / static_cast<double>(p);
}

std::complex<double> mp_stieltjes(std::complex<double> z, Concentration conc) {
  if (!(z.imag() > 0.0)) {
    throw DomainError("mp_stieltjes: z must lie in the upper half-plane");
  }
  const double c = conc.c;
  std::complex<double> s = std::sqrt((z - 1.0 - c) * (z - 1.0 - c) - 4.0 * c);
  std::complex<double> m_plus = ((1.0 - c) - z + s) / (2.0 * c * z);
  std::complex<double> m_minus = ((1.0 - c) - z - s) / (2.0 * c * z);
  // Herglotz branch: a Stieltjes transform of a measure maps C+ to C+.
  return m_plus.imag() > 0.0 ? m_plus : m_minus;
}

std::pair<double, double> mp_support(Concentration conc) {
  double r = std::sqrt(conc.c);
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

double mp_density(double l, Concentration conc) {
  auto [lo, hi] = mp_support(conc);
  if (l <= lo || l >= hi) return 0.0;
  return std::sqrt((hi - l) * (l - lo)) / (2.0 * M_PI * conc.c * l);
}

double mp_real_boundary(double l, Concentration conc) {
  auto [lo, hi] = mp_support(conc);
  if (!(l > lo && l < hi)) {
    throw DomainError("mp_real_boundary: l outside the open bulk (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  return (1.0 - conc.c - l) / (2.0 * conc.c * l);
}

double oracle_delta(double l, std::complex<double> m_boundary,
                    Concentration conc) {
  if (!(l > 0.0)) throw DomainError("oracle_delta: l must be positive");
  double denom = std::norm(1.0 - conc.c - conc.c * l * m_boundary);
  if (denom == 0.0) throw SingularityError("oracle_delta: zero denominator");
  return l / denom;
}

double oracle_delta_inv(double l, double m_re, Concentration conc) {
  if (!(l > 0.0)) throw DomainError("oracle_delta_inv: l must be positive");
  return (1.0 - conc.c - 2.0 * conc.c * l * m_re) / l;
}

double phi_asymptotic(double l, double m_re, Concentration conc) {
  double denom = 1.0 - conc.c - 2.0 * conc.c * l * m_re;
  if (denom == 0.0) throw SingularityError("phi_asymptotic: zero denominator");
  return l / denom;
}

double quantile_map(double l, double m_re, Concentration conc) {
  double denom = 1.0 - conc.c - conc.c * l * m_re;
  if (!(denom > 0.0)) {
    throw DomainError(
        "quantile_map: nonpositive denominator, image leaves the positive cone");
  }
  return l / denom;
}

namespace {

constexpr double kSqrt5 = 2.2360679774997896964091736687747;

// Epanechnikov kernel on [-sqrt5, sqrt5], unit variance.
double epan(double u) {
  if (std::abs(u) >= kSqrt5) return 0.0;
  return 3.0 / (4.0 * kSqrt5) * (1.0 - u * u / 5.0);
}

// PV integral of epan(u) / (u - v) over the support.
double epan_hilbert(double v) {
  double t = 0.0;
  if (std::abs(v) != kSqrt5) {
    double logterm = std::log(std::abs((kSqrt5 - v) / (kSqrt5 + v)));
    t = 3.0 / (4.0 * kSqrt5) * (1.0 - v * v / 5.0) * logterm;
    if (!std::isfinite(t)) t = 0.0;
  }
  return t - 0.3 * v;
}

}  // namespace

std::complex<double> smoothed_boundary(const Eigen::VectorXd& eigs, double x,
                                       double bandwidth) {
  const int p = static_cast<int>(eigs.size());
  if (p < 2) throw DomainError("smoothed_boundary: need p >= 2");
  double h = bandwidth > 0.0 ? bandwidth
                             : std::pow(static_cast<double>(p), -1.0 / 3.0);
  double re = 0.0;
  double density = 0.0;
  for (int j = 0; j < p; ++j) {
    double hj = h * eigs[j];
    if (!(hj > 0.0)) {
      throw DomainError("smoothed_boundary: eigenvalues must be positive");
    }
    double v = (x - eigs[j]) / hj;
    re += epan_hilbert(v) / hj;
    density += epan(v) / hj;
  }
  re /= p;
  density /= p;
  return {re, M_PI * density};
}

}  // namespace eqcov
