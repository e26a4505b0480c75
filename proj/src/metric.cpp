#include "htdepth/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "htdepth/linprog.hpp"

namespace htdepth {

namespace {

// Circumscribed-radius estimate from the 2d canonical support values:
// |x_i| <= max(|h(e_i)|, |h(-e_i)|), hence |x| <= sqrt(d) * max_i of that.
// Throws when the polytope is unbounded in a canonical direction.
double circumscribed_radius(const HPolytope& p) {
  const int d = p.dim();
  double axis_max = 0.0;
  for (int i = 0; i < d; ++i) {
    Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
    plus[static_cast<std::size_t>(i)] = 1.0;
    minus[static_cast<std::size_t>(i)] = -1.0;
    const SupportValue hp = support_function(p, Direction(plus));
    const SupportValue hm = support_function(p, Direction(minus));
    if (hp.unbounded || hm.unbounded) {
      throw UnboundedPolytopeError("hausdorff_support: unbounded input");
    }
    axis_max = std::max({axis_max, std::fabs(hp.value), std::fabs(hm.value)});
  }
  return std::sqrt(static_cast<double>(d)) * axis_max;
}

}  // namespace

HausdorffEstimate hausdorff_support(const HPolytope& p, const HPolytope& q, const SphereNet& net) {
  if (p.dim() != q.dim()) throw std::invalid_argument("hausdorff_support: dimension mismatch");
  if (net.directions.empty()) throw std::invalid_argument("hausdorff_support: empty net");
  if (polytope_is_empty(p) || polytope_is_empty(q)) {
    throw EmptyPolytopeError("hausdorff_support: empty input");
  }
  const double rp = circumscribed_radius(p);
  const double rq = circumscribed_radius(q);

  // LP problems built once per body; only the objective changes per direction.
  LpProblem lp_p = lp_from_polytope(p, Vec(static_cast<std::size_t>(p.dim()), 0.0));
  LpProblem lp_q = lp_from_polytope(q, Vec(static_cast<std::size_t>(q.dim()), 0.0));

  double value = 0.0;
  for (const Direction& u : net.directions) {
    if (u.dim() != p.dim()) throw std::invalid_argument("hausdorff_support: net dimension mismatch");
    lp_p.objective.assign(u.coords().begin(), u.coords().end());
    lp_q.objective.assign(u.coords().begin(), u.coords().end());
    const LpSolution sp = solve(lp_p);
    const LpSolution sq = solve(lp_q);
    if (sp.status != LpStatus::kOptimal || sq.status != LpStatus::kOptimal) {
      throw UnboundedPolytopeError("hausdorff_support: unbounded input");
    }
    value = std::max(value, std::fabs(sp.value - sq.value));
  }

  HausdorffEstimate est;
  est.value = value;
  est.net_delta = net.delta;
  est.r_out = std::max(rp, rq);
  est.certified_error = 2.0 * est.r_out * net.delta / (1.0 - net.delta);
  return est;
}

double quantile_deviation_to_hausdorff(double eta, double r, double big_r) {
  if (!(eta >= 0.0) || !(eta < r) || !(r <= big_r)) {
    throw std::invalid_argument("quantile_deviation_to_hausdorff: need 0 <= eta < r <= R");
  }
  return (eta * big_r / r) * (1.0 + eta / r) / (1.0 - eta / r);
}

double discretized_deviation_bound(double eta, double r, double big_r, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("discretized_deviation_bound: need 0 < delta < 1");
  }
  return quantile_deviation_to_hausdorff(eta, r, big_r) + 2.0 * big_r * delta / (1.0 - delta);
}

}  // namespace htdepth
