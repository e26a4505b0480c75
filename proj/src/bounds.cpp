#include "htdepth/bounds.hpp"

#include <cmath>
#include <sstream>

namespace htdepth {

void AssumptionParams::validate() const {
  if (!(epsilon > 0.0) || !(epsilon < r) || !(r <= big_r)) {
    throw std::invalid_argument("AssumptionParams: need 0 < epsilon < r <= R");
  }
  if (!(big_l > 0.0)) throw std::invalid_argument("AssumptionParams: need L > 0");
}

BoundEval theorem2_bound(const AssumptionParams& params, int d, long long n, double x,
                         ExponentVariant variant) {
  params.validate();
  if (d < 2) throw std::invalid_argument("theorem2_bound: d must be >= 2");
  if (n < 1) throw std::invalid_argument("theorem2_bound: n must be >= 1");

  const double coef = 10.0 * std::sqrt(5.0 * static_cast<double>(d + 1));
  const double x_lo = coef / params.big_l;
  const double x_hi = params.epsilon * std::sqrt(static_cast<double>(n));
  if (!(x >= x_lo) || !(x < x_hi)) {
    std::ostringstream msg;
    msg << "theorem2_bound: x outside the valid interval [" << x_lo << ", " << x_hi << ")";
    if (x_lo >= x_hi) msg << " (empty for this n)";
    throw BoundDomainError(msg.str());
  }

  BoundEval eval;
  eval.x = x;
  eval.constants.big_c =
      (params.big_r / params.r) * (1.0 + params.epsilon / params.r) / (1.0 - params.epsilon / params.r);
  const double log_a = -250.0 * static_cast<double>(d + 1);
  eval.constants.big_a = std::exp(log_a);
  const double lx = params.big_l * x;
  const double linear = (variant == ExponentVariant::kLemma) ? coef * lx : coef * x;
  eval.probability_bound = std::exp(log_a - lx * lx / 2.0 + linear);
  eval.radius_bound = eval.constants.big_c * x / std::sqrt(static_cast<double>(n));
  eval.vacuous = eval.probability_bound > 1.0;
  return eval;
}

double net_failure_bound(int d, long long m, double delta) {
  if (d < 2) throw std::invalid_argument("net_failure_bound: d must be >= 2");
  if (m < 1) throw std::invalid_argument("net_failure_bound: M must be >= 1");
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("net_failure_bound: delta must be in (0, 1]");
  }
  const double exponent = -static_cast<double>(m) * std::pow(delta, d - 1) /
                              (2.0 * d * std::pow(8.0, (d - 1) / 2.0)) +
                          d * std::log(1.0 / delta);
  return std::exp(d * std::log(6.0) + exponent);
}

long long corollary4_directions(int d, long long n, double k) {
  if (d < 2) throw std::invalid_argument("corollary4_directions: d must be >= 2");
  if (n < 2) throw std::invalid_argument("corollary4_directions: n must be >= 2");
  if (!(k >= 0.0)) throw std::invalid_argument("corollary4_directions: k must be >= 0");
  const double rhs = 2.0 * d * std::pow(8.0, (d - 1) / 2.0) * ((d + k) / 2.0) *
                     std::pow(static_cast<double>(n), d - 1) * std::log(static_cast<double>(n));
  if (!(rhs < 9.0e18)) {
    std::ostringstream msg;
    msg << "corollary4_directions: threshold " << rhs << " exceeds integer capacity";
    throw CapacityError(msg.str());
  }
  return static_cast<long long>(std::floor(rhs)) + 1;
}

}  // namespace htdepth
