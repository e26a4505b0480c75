#ifndef HTDEPTH_DISTR_HPP_
#define HTDEPTH_DISTR_HPP_

// Reference distributions: seeded samplers and population level-set oracles
// used as ground truth by the experiments.

#include <memory>
#include <optional>

#include "htdepth/geom.hpp"
#include "htdepth/quantile.hpp"

namespace htdepth {

enum class DistKind { kGaussian, kUniformBall, kUniformPolytope, kAtomMixture };

class UnsupportedDistributionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateLevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePolytopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReferenceDistribution {
  DistKind kind = DistKind::kGaussian;
  int dim = 0;

  // gaussian
  Vec mean;
  std::vector<double> cov;  // row-major d x d, SPD (validated on construction)

  // uniform ball
  Vec center;
  double radius = 0.0;

  // uniform polytope
  std::optional<HPolytope> polytope;

  // atom mixture: atoms with nonnegative weights summing to <= 1; the
  // remaining mass goes to the background distribution (required when the
  // weights sum to less than 1).
  std::vector<Vec> atom_points;
  Vec atom_weights;
  std::shared_ptr<const ReferenceDistribution> background;

  static ReferenceDistribution gaussian(Vec mean, std::vector<double> cov);
  static ReferenceDistribution isotropic_gaussian(Vec mean, double sigma);
  static ReferenceDistribution uniform_ball(Vec center, double radius);
  static ReferenceDistribution uniform_polytope(HPolytope poly);
  static ReferenceDistribution atom_mixture(std::vector<Vec> points, Vec weights,
                                            std::optional<ReferenceDistribution> background);
};

struct PopulationLevelSet {
  enum class Kind { kBall, kHPolytopeApprox } kind = Kind::kBall;
  Vec center;
  double radius = 0.0;
  std::optional<HPolytope> polytope;
  double alpha = 0.0;
};

// Deterministic n-point sample. Gaussian draws are Cholesky-transformed
// standard normals; the ball draw is direction times radius^(1/d) scaling;
// uniform-polytope uses rejection from the canonical-support bounding box
// (degenerate-polytope error when the calibrated acceptance rate is below
// 1e-4 over 1e5 proposals).
PointCloud sample(const ReferenceDistribution& dist, long long n, std::uint64_t seed);

// Population level set for the oracle distributions: a ball for isotropic
// Gaussians and uniform balls, an H-polytope on a fine net from the analytic
// quantile profile for general Gaussians. alpha > 1/2 raises
// DegenerateLevelError (the level set of these atomless symmetric
// distributions is empty there); alpha = 1/2 yields the degenerate radius-0
// ball.
PopulationLevelSet population_levelset(const ReferenceDistribution& dist, LevelSpec level,
                                       double net_delta = 1e-3);

// The ball oracle in H-representation on a net: offsets <u, center> + radius.
HPolytope ball_to_hpolytope(const Vec& center, double radius, const SphereNet& net);

struct CentroidDepthEstimate {
  double min_mass = 0.0;    // min over sampled directions of halfspace mass
  double std_error = 0.0;   // binomial SE at the minimizing direction
  long long trials = 0;
};

// Monte Carlo check of the log-concave centroid depth: minimum over sampled
// directions of the estimated mass of the halfspace through the centroid.
// Only the log-concave kinds (gaussian, uniform-ball, uniform-polytope) are
// accepted.
CentroidDepthEstimate logconcave_centroid_depth_check(const ReferenceDistribution& dist,
                                                      long long trials, std::uint64_t seed);

}  // namespace htdepth

#endif  // HTDEPTH_DISTR_HPP_
