#ifndef EQCOV_MODELS_RNG_HPP
#define EQCOV_MODELS_RNG_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqcov/errors.hpp"
#include "eqcov/spectral_core.hpp"

namespace eqcov {

// (master seed, stream id) pair. Each Monte Carlo trial gets its own
// stream so trials can run on any thread with identical output.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Deterministic Gaussian stream: mt19937_64 keyed by (master, stream),
// normals via Box-Muller on 53-bit uniforms. All draws are engine-order
// deterministic, so identical seeds give bitwise-identical output.
class GaussianStream {
 public:
  explicit GaussianStream(SeedSpec seed);

  double uniform();  // (0, 1]
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Declarative population eigenvalue profile.
struct SpectrumSpec {
  enum class Kind { identity, geometric, explicit_list, atoms };

  Kind kind = Kind::identity;
  int p = 1;
  double scale = 1.0;
  double ratio = 1.0;                 // geometric only, > 1
  std::vector<double> values;         // explicit_list / atoms
  std::vector<double> weights;        // atoms only, sums to 1

  static SpectrumSpec MakeIdentity(int p, double scale = 1.0);
  static SpectrumSpec Geometric(int p, double ratio, double scale = 1.0);
  static SpectrumSpec Explicit(std::vector<double> values);
  static SpectrumSpec Atoms(int p, std::vector<double> values,
                            std::vector<double> weights, double scale = 1.0);
};

// Descending positive eigenvalue vector of length spec.p.
// geometric(r) yields scale * (r^{p-1}, ..., r, 1).
Eigen::VectorXd realize_spectrum(const SpectrumSpec& spec);

// n draws x_i = Sigma^{1/2} z_i with z_i standard normal and
// Sigma = V diag(gamma) V^T (V = rotation if given, else identity).
// The z draws depend only on the seed, not on gamma or rotation.
ObservationMatrix sample_gaussian(const Eigen::VectorXd& gamma,
                                  const std::optional<Eigen::MatrixXd>& rotation,
                                  int n, SeedSpec seed);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
// R diagonal sign-fixed to be positive.
Eigen::MatrixXd random_orthogonal(int p, SeedSpec seed);

}  // namespace eqcov

#endif
