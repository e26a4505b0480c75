#ifndef HTDEPTH_TESTS_ORACLES_HPP_
#define HTDEPTH_TESTS_ORACLES_HPP_

// Test-side oracles, deliberately independent of the library's fast paths:
// counting-definition quantiles, a full-recount Tukey depth, and 2D vertex
// enumeration for support-function and Hausdorff cross-checks.

#include <vector>

#include "htdepth/geom.hpp"

namespace htdepth::testing {

// sup{ t : #{i : p_i >= t} >= n*alpha } by scanning every threshold.
double counting_upper_quantile(const std::vector<double>& projections, double alpha);

// inf{ t : #{i : p_i <= t} >= n*(1-alpha) } by scanning every threshold.
double counting_lower_quantile(const std::vector<double>& projections, double alpha);

// Exact 2D Tukey depth of x by evaluating the halfspace count at every
// pairwise critical normal and every pairwise angular bisector, recounting
// from scratch each time (O(n^3)).
long long brute_force_depth_count_2d(const PointCloud& cloud, std::span<const double> x);

// All vertices of a 2D H-polytope via pairwise boundary intersections
// filtered by feasibility. Deduplicated; unordered.
std::vector<Vec> vertex_enum_2d(const HPolytope& p);

// max_{v in vertices} <u, v>.
double vertex_support_2d(const std::vector<Vec>& vertices, const Direction& u);

// Euclidean distance from a point to a convex polygon given by its vertices
// (0 when inside).
double point_to_polygon_distance(std::span<const double> x, const std::vector<Vec>& vertices);

// Hausdorff distance between two bounded nonempty 2D H-polytopes via vertex
// enumeration: max over vertices of the distance to the other body, both ways.
double hausdorff_vertex_oracle_2d(const HPolytope& p, const HPolytope& q);

// Random bounded polytope around the origin: the four axis constraints plus
// a few random supporting halfplanes, offsets in [0.3, 2].
HPolytope random_bounded_polytope_2d(Rng& rng);

}  // namespace htdepth::testing

#endif  // HTDEPTH_TESTS_ORACLES_HPP_
