#ifndef HTDEPTH_BOUNDS_HPP_
#define HTDEPTH_BOUNDS_HPP_

// Evaluators for the explicit finite-sample formulas: the deviation
// inequality for the empirical level set, the delta-net failure probability,
// and the direction-count rule for the sampled approximation.

#include <stdexcept>

#include "htdepth/geom.hpp"

namespace htdepth {

// epsilon, L: local regularity of the directional CDFs around their
// quantiles; r, R: inscribed/circumscribed radii of the population level
// set around a; tau: optional bound on |a|.
struct AssumptionParams {
  double epsilon = 0.0;
  double big_l = 0.0;
  double r = 0.0;
  double big_r = 0.0;
  Vec a;
  std::optional<double> tau;

  void validate() const;
};

struct BoundConstants {
  double big_c = 0.0;  // (R/r)(1 + eps/r)/(1 - eps/r)
  double big_a = 0.0;  // e^(-250(d+1)); underflows to 0 in double for d >= 1
};

struct BoundEval {
  double x = 0.0;
  double probability_bound = 0.0;
  double radius_bound = 0.0;  // C*x/sqrt(n)
  BoundConstants constants;
  bool vacuous = false;  // probability_bound > 1 (reported unclamped)
};

// The displayed deviation exponent carries "10*sqrt(5(d+1))*x"; the source
// lemma carries the L-bearing "10*sqrt(5(d+1))*L*x". Both are exposed; the
// lemma form is the default.
enum class ExponentVariant { kLemma, kTheorem };

class BoundDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// probability_bound = A * exp(-L^2 x^2 / 2 + 10 sqrt(5(d+1)) [L] x), valid on
// 10 sqrt(5(d+1))/L <= x < eps*sqrt(n) (BoundDomainError outside, listing the
// interval, which may be empty). The product is evaluated in log space so it
// survives A's underflow.
BoundEval theorem2_bound(const AssumptionParams& params, int d, long long n, double x,
                         ExponentVariant variant = ExponentVariant::kLemma);

// 6^d * exp(-M * delta^(d-1) / (2 d 8^((d-1)/2)) + d log(1/delta)); may
// exceed 1 (vacuous values returned as-is).
double net_failure_bound(int d, long long m, double delta);

// Smallest integer strictly greater than
// 2 d 8^((d-1)/2) ((d+k)/2) n^(d-1) log(n); CapacityError (with the exact
// floating threshold in the message) when that exceeds the integer range.
long long corollary4_directions(int d, long long n, double k);

}  // namespace htdepth

#endif  // HTDEPTH_BOUNDS_HPP_
