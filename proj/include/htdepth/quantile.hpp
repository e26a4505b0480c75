#ifndef HTDEPTH_QUANTILE_HPP_
#define HTDEPTH_QUANTILE_HPP_

// Directional quantiles of projections <u, X>: empirical upper/lower
// order-statistic quantiles, analytic quantiles for reference distributions,
// and the subadditivity probe.

#include <cstdint>
#include <functional>

#include "htdepth/geom.hpp"

namespace htdepth {

struct LevelSpec {
  double alpha;

  explicit LevelSpec(double a);
};

enum class QuantileSide { kUpper, kLower };

// A directional quantile profile q: S^(d-1) -> R, extended to all of R^d by
// positive homogeneity (q_{lambda*u} = lambda * q_u, q_0 = 0).
struct QuantileProfile {
  std::function<double(const Direction&)> evaluator;
  LevelSpec level;
  QuantileSide side;
  int dim;

  double operator()(const Direction& u) const { return evaluator(u); }
  double homogeneous(std::span<const double> z) const;
};

// Upper empirical (1-alpha)-quantile of the projections <u, X_i>:
// sup{ t : #{i : <u,X_i> >= t} >= n*alpha }, i.e. the (n - ceil(n*alpha) + 1)-th
// smallest projection. Ties follow the counting definition.
double empirical_upper_quantile(const PointCloud& cloud, const Direction& u, LevelSpec level);

// Lower empirical (1-alpha)-quantile: inf{ t : #{i : <u,X_i> <= t} >= n*(1-alpha) },
// the ceil(n*(1-alpha))-th smallest projection.
double empirical_lower_quantile(const PointCloud& cloud, const Direction& u, LevelSpec level);

// Same order statistics on a raw projection vector (scratch reused by value).
double upper_quantile_of_projections(std::vector<double> projections, LevelSpec level);
double lower_quantile_of_projections(std::vector<double> projections, LevelSpec level);

// <u, mean> + InvPhi(1 - alpha) * sqrt(u' cov u) for an SPD covariance.
double gaussian_quantile(const Vec& mean, const std::vector<double>& cov, const Direction& u,
                         LevelSpec level);

// Inverse standard-normal CDF by bisection on the erf-based CDF; absolute
// accuracy 1e-10 (correctness over speed on this cold path).
double inverse_normal_cdf(double p);

// The q solving P[<u,X> >= q] = alpha for X uniform on B(0, radius), any u by
// symmetry; bisection on the one-coordinate projection CDF, tolerance 1e-10.
double uniform_ball_quantile(double radius, int d, LevelSpec level);

struct SubadditivityReport {
  long long violations = 0;
  // Largest value of Q(u+v) - Q(u) - Q(v) over the sampled pairs (may be
  // negative when no violation occurred).
  double worst_gap = 0.0;
};

// Samples `pairs` random direction pairs (u, v) and tests
// Q(u+v) <= Q(u) + Q(v) + tol for the homogeneous extension Q.
SubadditivityReport subadditivity_probe(const QuantileProfile& profile, long long pairs,
                                        std::uint64_t seed, double tol);

// Profile factories for the common cases.
QuantileProfile empirical_upper_profile(const PointCloud& cloud, LevelSpec level);
QuantileProfile gaussian_upper_profile(Vec mean, std::vector<double> cov, LevelSpec level);

}  // namespace htdepth

#endif  // HTDEPTH_QUANTILE_HPP_
