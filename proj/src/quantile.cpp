#include "htdepth/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace htdepth {

LevelSpec::LevelSpec(double a) : alpha(a) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::invalid_argument("LevelSpec: alpha must lie in (0, 1)");
  }
}

double QuantileProfile::homogeneous(std::span<const double> z) const {
  const double len = norm(z);
  if (len == 0.0) return 0.0;
  Vec unit(z.begin(), z.end());
  for (double& c : unit) c /= len;
  return len * evaluator(Direction(std::move(unit)));
}

namespace {

std::vector<double> project(const PointCloud& cloud, const Direction& u) {
  if (u.dim() != cloud.dim()) {
    throw std::invalid_argument("quantile: direction dimension mismatch");
  }
  std::vector<double> p(static_cast<std::size_t>(cloud.size()));
  for (long long i = 0; i < cloud.size(); ++i) {
    p[static_cast<std::size_t>(i)] = dot(u.span(), cloud.point(i));
  }
  return p;
}

double kth_smallest(std::vector<double>& v, long long k) {
  // k is 1-based
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

}  // namespace

double upper_quantile_of_projections(std::vector<double> projections, LevelSpec level) {
  const long long n = static_cast<long long>(projections.size());
  if (n < 1) throw std::invalid_argument("upper_quantile_of_projections: empty input");
  // The defining supremum sup{t : #{p_i >= t} >= n*alpha} is the k-th
  // smallest projection with k = n - ceil(n*alpha) + 1, ties included.
  const long long need = static_cast<long long>(std::ceil(static_cast<double>(n) * level.alpha));
  const long long k = n - need + 1;
  return kth_smallest(projections, k);
}

double lower_quantile_of_projections(std::vector<double> projections, LevelSpec level) {
  const long long n = static_cast<long long>(projections.size());
  if (n < 1) throw std::invalid_argument("lower_quantile_of_projections: empty input");
  const long long k =
      static_cast<long long>(std::ceil(static_cast<double>(n) * (1.0 - level.alpha)));
  return kth_smallest(projections, k);
}

double empirical_upper_quantile(const PointCloud& cloud, const Direction& u, LevelSpec level) {
  return upper_quantile_of_projections(project(cloud, u), level);
}

double empirical_lower_quantile(const PointCloud& cloud, const Direction& u, LevelSpec level) {
  return lower_quantile_of_projections(project(cloud, u), level);
}

namespace {

// Lower-triangular Cholesky factor of a symmetric positive definite matrix,
// row-major d x d. Returns false when the matrix is not SPD.
bool cholesky(const std::vector<double>& cov, int d, std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = cov[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
      for (int k = 0; k < j; ++k) {
        s -= out[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(k)] *
             out[static_cast<std::size_t>(j) * d + static_cast<std::size_t>(k)];
      }
      if (i == j) {
        if (s <= 0.0) return false;
        out[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] = std::sqrt(s);
      } else {
        out[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] =
            s / out[static_cast<std::size_t>(j) * d + static_cast<std::size_t>(j)];
      }
    }
  }
  return true;
}

void check_spd(const std::vector<double>& cov, int d) {
  if (static_cast<std::size_t>(d) * static_cast<std::size_t>(d) != cov.size()) {
    throw std::invalid_argument("gaussian_quantile: covariance size != d*d");
  }
  double scale = 0.0;
  for (double v : cov) scale = std::max(scale, std::fabs(v));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::fabs(cov[static_cast<std::size_t>(i) * d + j] - cov[static_cast<std::size_t>(j) * d + i]) >
          1e-12 * std::max(1.0, scale)) {
        throw std::invalid_argument("gaussian_quantile: covariance not symmetric");
      }
    }
  }
  std::vector<double> scratch;
  if (!cholesky(cov, d, scratch)) {
    throw std::invalid_argument("gaussian_quantile: covariance not positive definite");
  }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0, 1)");
  }
  double lo = -40.0, hi = 40.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double gaussian_quantile(const Vec& mean, const std::vector<double>& cov, const Direction& u,
                         LevelSpec level) {
  const int d = u.dim();
  if (static_cast<int>(mean.size()) != d) {
    throw std::invalid_argument("gaussian_quantile: mean dimension mismatch");
  }
  check_spd(cov, d);
  double quad = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      quad += u[i] * cov[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] * u[j];
    }
  }
  quad = std::max(quad, 0.0);
  return dot(u.span(), mean) + inverse_normal_cdf(1.0 - level.alpha) * std::sqrt(quad);
}

namespace {

// integral of cos(t)^d over [a, b] by composite Simpson; the integrand is
// smooth, unlike the raw projection density which has sqrt endpoints.
double cos_power_integral(double a, double b, int d) {
  constexpr int kPanels = 1 << 14;
  const double h = (b - a) / kPanels;
  double s = std::pow(std::cos(a), d) + std::pow(std::cos(b), d);
  for (int i = 1; i < kPanels; ++i) {
    const double t = a + h * i;
    s += std::pow(std::cos(t), d) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

}  // namespace

double uniform_ball_quantile(double radius, int d, LevelSpec level) {
  if (!(radius > 0.0)) throw std::invalid_argument("uniform_ball_quantile: radius must be > 0");
  if (d < 2) throw std::invalid_argument("uniform_ball_quantile: d must be >= 2");
  // The one-coordinate density of the uniform ball is proportional to
  // (1 - (t/R)^2)^((d-1)/2); substituting t = R sin(theta) gives cos(theta)^d.
  const double total = cos_power_integral(-M_PI / 2.0, M_PI / 2.0, d);
  auto tail = [&](double s) {
    return cos_power_integral(std::asin(s), M_PI / 2.0, d) / total;
  };
  double lo = -1.0, hi = 1.0;  // tail decreasing in s
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) > level.alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return radius * 0.5 * (lo + hi);
}

SubadditivityReport subadditivity_probe(const QuantileProfile& profile, long long pairs,
                                        std::uint64_t seed, double tol) {
  if (pairs < 1) throw std::invalid_argument("subadditivity_probe: pairs must be >= 1");
  const int d = profile.dim;
  Rng rng(seed);
  SubadditivityReport report;
  report.worst_gap = -std::numeric_limits<double>::infinity();
  Vec w(static_cast<std::size_t>(d));
  auto random_direction = [&] {
    Vec v(static_cast<std::size_t>(d));
    do {
      for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = rng.gaussian();
    } while (norm(v) < 1e-12);
    return Direction(std::move(v));
  };
  for (long long t = 0; t < pairs; ++t) {
    const Direction u = random_direction();
    const Direction v = random_direction();
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = u[i] + v[i];
    const double gap = profile.homogeneous(w) - profile.evaluator(u) - profile.evaluator(v);
    report.worst_gap = std::max(report.worst_gap, gap);
    if (gap > tol) ++report.violations;
  }
  return report;
}

QuantileProfile empirical_upper_profile(const PointCloud& cloud, LevelSpec level) {
  return QuantileProfile{
      [&cloud, level](const Direction& u) { return empirical_upper_quantile(cloud, u, level); },
      level, QuantileSide::kUpper, cloud.dim()};
}

QuantileProfile gaussian_upper_profile(Vec mean, std::vector<double> cov, LevelSpec level) {
  const int d = static_cast<int>(mean.size());
  return QuantileProfile{
      [mean = std::move(mean), cov = std::move(cov), level](const Direction& u) {
        return gaussian_quantile(mean, cov, u, level);
      },
      level, QuantileSide::kUpper, d};
}

}  // namespace htdepth
