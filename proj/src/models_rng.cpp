#include "eqcov/models_rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eqcov {

GaussianStream::GaussianStream(SeedSpec seed) {
  const std::uint32_t words[4] = {
      static_cast<std::uint32_t>(seed.master_seed),
      static_cast<std::uint32_t>(seed.master_seed >> 32),
      static_cast<std::uint32_t>(seed.stream_id),
      static_cast<std::uint32_t>(seed.stream_id >> 32)};
  std::seed_seq seq(words, words + 4);
  engine_.seed(seq);
}

double GaussianStream::uniform() {
  // 53-bit mantissa, shifted into (0, 1] so log() below is safe.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

SpectrumSpec SpectrumSpec::MakeIdentity(int p, double scale) {
  SpectrumSpec s;
  s.kind = Kind::identity;
  s.p = p;
  s.scale = scale;
  return s;
}

SpectrumSpec SpectrumSpec::Geometric(int p, double ratio, double scale) {
  SpectrumSpec s;
  s.kind = Kind::geometric;
  s.p = p;
  s.ratio = ratio;
  s.scale = scale;
  return s;
}

SpectrumSpec SpectrumSpec::Explicit(std::vector<double> values) {
  SpectrumSpec s;
  s.kind = Kind::explicit_list;
  s.p = static_cast<int>(values.size());
  s.values = std::move(values);
  return s;
}

SpectrumSpec SpectrumSpec::Atoms(int p, std::vector<double> values,
                                 std::vector<double> weights, double scale) {
  SpectrumSpec s;
  s.kind = Kind::atoms;
  s.p = p;
  s.values = std::move(values);
  s.weights = std::move(weights);
  s.scale = scale;
  return s;
}

Eigen::VectorXd realize_spectrum(const SpectrumSpec& spec) {
  if (spec.p < 1) throw DomainError("realize_spectrum: p must be >= 1");
  if (!(spec.scale > 0.0)) {
    throw DomainError("realize_spectrum: scale must be positive");
  }

  std::vector<double> out;
  switch (spec.kind) {
    case SpectrumSpec::Kind::identity:
      out.assign(spec.p, spec.scale);
      break;
    case SpectrumSpec::Kind::geometric: {
      if (!(spec.ratio > 1.0)) {
        throw DomainError("realize_spectrum: geometric ratio must be > 1");
      }
      out.resize(spec.p);
      for (int i = 0; i < spec.p; ++i) {
        out[i] = spec.scale * std::pow(spec.ratio, spec.p - 1 - i);
      }
      break;
    }
    case SpectrumSpec::Kind::explicit_list: {
      if (static_cast<int>(spec.values.size()) != spec.p) {
        throw DomainError("realize_spectrum: explicit list length != p");
      }
      out = spec.values;
      for (double& v : out) v *= spec.scale;
      std::sort(out.begin(), out.end(), std::greater<double>());
      break;
    }
    case SpectrumSpec::Kind::atoms: {
      if (spec.values.empty() || spec.values.size() != spec.weights.size()) {
        throw DomainError("realize_spectrum: atoms need matching values/weights");
      }
      double wsum = std::accumulate(spec.weights.begin(), spec.weights.end(), 0.0);
      if (!(wsum > 0.0)) {
        throw DomainError("realize_spectrum: atom weights must be positive");
      }
      // Integer counts by largest remainder so they sum to p exactly.
      const int k = static_cast<int>(spec.values.size());
      std::vector<int> counts(k);
      std::vector<std::pair<double, int>> rema(k);
      int assigned = 0;
      for (int j = 0; j < k; ++j) {
        double exact = spec.weights[j] / wsum * spec.p;
        counts[j] = static_cast<int>(std::floor(exact));
        assigned += counts[j];
        rema[j] = {exact - counts[j], j};
      }
      std::sort(rema.begin(), rema.end(),
                [](const auto& a, const auto& b) { return a.first > b.first; });
      for (int r = 0; r < spec.p - assigned; ++r) counts[rema[r % k].second] += 1;
      for (int j = 0; j < k; ++j) {
        for (int c = 0; c < counts[j]; ++c) out.push_back(spec.scale * spec.values[j]);
      }
      std::sort(out.begin(), out.end(), std::greater<double>());
      break;
    }
  }

  for (double v : out) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("realize_spectrum: eigenvalues must be strictly positive");
    }
  }
  Eigen::VectorXd vec(spec.p);
  for (int i = 0; i < spec.p; ++i) vec[i] = out[i];
  return vec;
}

ObservationMatrix sample_gaussian(const Eigen::VectorXd& gamma,
                                  const std::optional<Eigen::MatrixXd>& rotation,
                                  int n, SeedSpec seed) {
  const int p = static_cast<int>(gamma.size());
  if (n < 1) throw DomainError("sample_gaussian: n must be >= 1");
  for (int i = 0; i < p; ++i) {
    if (!(gamma[i] > 0.0)) {
      throw DomainError("sample_gaussian: gamma must be positive");
    }
  }
  if (rotation && (rotation->rows() != p || rotation->cols() != p)) {
    throw DomainError("sample_gaussian: rotation has wrong shape");
  }

  GaussianStream stream(seed);
  Eigen::MatrixXd z(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z(i, j) = stream.normal();
  }

  Eigen::VectorXd sd = gamma.cwiseSqrt();
  if (!rotation) {
    return ObservationMatrix(z * sd.asDiagonal());
  }
  // Sigma^{1/2} = V diag(sqrt gamma) V^T; x_i^T = z_i^T Sigma^{1/2}
  const Eigen::MatrixXd& v = *rotation;
  Eigen::MatrixXd half = v * sd.asDiagonal() * v.transpose();
  return ObservationMatrix(z * half);
}

Eigen::MatrixXd random_orthogonal(int p, SeedSpec seed) {
  if (p < 1) throw DomainError("random_orthogonal: p must be >= 1");
  GaussianStream stream(seed);
  Eigen::MatrixXd g(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) g(i, j) = stream.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < p; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace eqcov
