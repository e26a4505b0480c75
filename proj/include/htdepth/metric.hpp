#ifndef HTDEPTH_METRIC_HPP_
#define HTDEPTH_METRIC_HPP_

// Hausdorff distance between convex bodies via support-function differences
// over a sphere net, with a certified discretization error, plus the
// quantile-deviation-to-Hausdorff bound evaluators.

#include "htdepth/geom.hpp"

namespace htdepth {

struct HausdorffEstimate {
  double value = 0.0;            // max over net directions of |h_P - h_Q|
  double certified_error = 0.0;  // true d_H lies in [value, value + certified_error]
  double net_delta = 0.0;
  double r_in = 0.0;   // informational inscribed radius when known, else 0
  double r_out = 0.0;  // circumscribed radius estimate used in the certificate
};

// Requires both polytopes bounded and nonempty (checked by LP probes);
// throws EmptyPolytopeError / UnboundedPolytopeError otherwise. The
// certificate uses the support functions' Lipschitz constants: with both
// bodies inside B(0, R), |h_P - h_Q| varies by at most 2R|u - v|, so the sup
// over the sphere exceeds the max over a delta-net by at most
// 2*R*delta/(1-delta).
HausdorffEstimate hausdorff_support(const HPolytope& p, const HPolytope& q, const SphereNet& net);

// (eta*R/r) * (1 + eta/r) / (1 - eta/r): the Hausdorff bound implied by a
// uniform quantile deviation eta < r when B(0,r) <= G <= B(0,R).
double quantile_deviation_to_hausdorff(double eta, double r, double big_r);

// The discretized variant, adding the net slack 2*R*delta/(1-delta).
double discretized_deviation_bound(double eta, double r, double big_r, double delta);

}  // namespace htdepth

#endif  // HTDEPTH_METRIC_HPP_
