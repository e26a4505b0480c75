#ifndef HTDEPTH_DEPTH_HPP_
#define HTDEPTH_DEPTH_HPP_

// Tukey halfspace depth and its upper level sets relative to a point cloud:
// the exact 2D angular-sweep algorithms, direction-sampled approximations in
// any dimension, and the membership cross-checks between the depth-based and
// quantile-based representations.

#include <optional>

#include "htdepth/geom.hpp"
#include "htdepth/quantile.hpp"

namespace htdepth {

// Exact rational depth value count/n.
struct DepthValue {
  long long count = 0;
  long long n = 0;

  double ratio() const { return static_cast<double>(count) / static_cast<double>(n); }
};

enum class Emptiness { kNonempty, kEmpty, kUnbounded };

struct LevelSetResult {
  HPolytope polytope;
  LevelSpec alpha;
  long long directions_used = 0;
  std::optional<double> truncation;
  Emptiness emptiness = Emptiness::kNonempty;
};

// Exact empirical Tukey depth at x for d = 2: the minimum over all closed
// halfplanes through x of the fraction of cloud points they contain,
// via an angular sweep over the 2n critical normals. Points coincident with
// x are counted in every halfplane. O(n log n).
DepthValue depth_exact_2d(const PointCloud& cloud, std::span<const double> x);

// Upper bound on the depth from a finite direction set (the restricted
// infimum dominates the true one). Any d >= 2.
DepthValue depth_upper_bound(const PointCloud& cloud, std::span<const double> x,
                             const SphereNet& net);

// The direction-sampled level-set approximation: one halfspace per given
// direction with offset equal to the empirical upper quantile. Emptiness is
// decided by the phase-1 LP; unboundedness by probing the support function
// in 2d+2 canonical directions.
LevelSetResult levelset_sampled(const PointCloud& cloud, LevelSpec level,
                                const std::vector<Direction>& directions);

// Exact empirical level set for d = 2: constraints at every +- normal of the
// pairwise difference vectors, plus one representative inside each arc
// between consecutive critical angles (and a fixed canonical ring, harmless
// for membership). Membership in the result agrees exactly with
// depth_exact_2d >= alpha.
LevelSetResult levelset_exact_2d(const PointCloud& cloud, LevelSpec level);

struct AgreementReport {
  long long disagreements = 0;
  long long boundary_skipped = 0;
  long long total = 0;
};

// Classifies each grid point by (a) depth_exact_2d >= alpha and (b) upper
// quantile constraints over a fine direction net, and counts disagreements
// outside a boundary band of width tol (measured by constraint slack).
AgreementReport representations_agree(const PointCloud& cloud, LevelSpec level,
                                      const std::vector<Vec>& grid, double tol);

struct AtomCheckResult {
  bool singleton_at_atom = false;
  Emptiness emptiness = Emptiness::kEmpty;
  Vec atom;
};

// For a cloud with a point x0 of multiplicity fraction p > 1/2 and
// alpha > 1/2: true iff the exact level set is nonempty and equals {x0}
// (support values within 1e-6 of <u, x0> on a fine net).
AtomCheckResult atom_levelset_check(const PointCloud& cloud, LevelSpec level);

// Intersects the level set with the hypercube of half-width `radius` plus
// the 2^d diagonal halfspaces (d <= 3), a documented outer approximation of
// the radius ball. An empty input becomes the degenerate singleton {0}.
LevelSetResult truncate(const LevelSetResult& result, double radius);

}  // namespace htdepth

#endif  // HTDEPTH_DEPTH_HPP_
