#include "htdepth/distr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "htdepth/linprog.hpp"

namespace htdepth {

namespace {

std::vector<double> cholesky_or_throw(const std::vector<double>& cov, int d) {
  std::vector<double> l(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = cov[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)];
      for (int k = 0; k < j; ++k) {
        s -= l[static_cast<std::size_t>(i) * d + k] * l[static_cast<std::size_t>(j) * d + k];
      }
      if (i == j) {
        if (s <= 0.0) throw std::invalid_argument("ReferenceDistribution: covariance not SPD");
        l[static_cast<std::size_t>(i) * d + j] = std::sqrt(s);
      } else {
        l[static_cast<std::size_t>(i) * d + j] = s / l[static_cast<std::size_t>(j) * d + j];
      }
    }
  }
  return l;
}

}  // namespace

ReferenceDistribution ReferenceDistribution::gaussian(Vec mean, std::vector<double> cov) {
  ReferenceDistribution dist;
  dist.kind = DistKind::kGaussian;
  dist.dim = static_cast<int>(mean.size());
  if (dist.dim < 1) throw std::invalid_argument("gaussian: empty mean");
  if (cov.size() != static_cast<std::size_t>(dist.dim) * static_cast<std::size_t>(dist.dim)) {
    throw std::invalid_argument("gaussian: covariance size != d*d");
  }
  cholesky_or_throw(cov, dist.dim);
  dist.mean = std::move(mean);
  dist.cov = std::move(cov);
  return dist;
}

ReferenceDistribution ReferenceDistribution::isotropic_gaussian(Vec mean, double sigma) {
  const int d = static_cast<int>(mean.size());
  if (!(sigma > 0.0)) throw std::invalid_argument("isotropic_gaussian: sigma must be > 0");
  std::vector<double> cov(static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) cov[static_cast<std::size_t>(i) * d + i] = sigma * sigma;
  return gaussian(std::move(mean), std::move(cov));
}

ReferenceDistribution ReferenceDistribution::uniform_ball(Vec center, double radius) {
  ReferenceDistribution dist;
  dist.kind = DistKind::kUniformBall;
  dist.dim = static_cast<int>(center.size());
  if (dist.dim < 1) throw std::invalid_argument("uniform_ball: empty center");
  if (!(radius > 0.0)) throw std::invalid_argument("uniform_ball: radius must be > 0");
  dist.center = std::move(center);
  dist.radius = radius;
  return dist;
}

ReferenceDistribution ReferenceDistribution::uniform_polytope(HPolytope poly) {
  ReferenceDistribution dist;
  dist.kind = DistKind::kUniformPolytope;
  dist.dim = poly.dim();
  dist.polytope = std::move(poly);
  return dist;
}

ReferenceDistribution ReferenceDistribution::atom_mixture(
    std::vector<Vec> points, Vec weights, std::optional<ReferenceDistribution> background) {
  ReferenceDistribution dist;
  dist.kind = DistKind::kAtomMixture;
  if (points.empty() || points.size() != weights.size()) {
    throw std::invalid_argument("atom_mixture: points/weights mismatch");
  }
  dist.dim = static_cast<int>(points.front().size());
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("atom_mixture: negative weight");
    total += w;
  }
  if (total > 1.0 + 1e-12) throw std::invalid_argument("atom_mixture: weights sum to > 1");
  if (total < 1.0 - 1e-12 && !background.has_value()) {
    throw std::invalid_argument("atom_mixture: weights sum to < 1 and no background given");
  }
  for (const Vec& p : points) {
    if (static_cast<int>(p.size()) != dist.dim) {
      throw std::invalid_argument("atom_mixture: inconsistent point dimensions");
    }
  }
  dist.atom_points = std::move(points);
  dist.atom_weights = std::move(weights);
  if (background.has_value()) {
    if (background->dim != dist.dim) throw std::invalid_argument("atom_mixture: background dimension");
    dist.background = std::make_shared<const ReferenceDistribution>(std::move(*background));
  }
  return dist;
}

namespace {

void sample_one(const ReferenceDistribution& dist, Rng& rng, const std::vector<double>& chol,
                double* out);

void sample_gaussian(const ReferenceDistribution& dist, Rng& rng, const std::vector<double>& chol,
                     double* out) {
  const int d = dist.dim;
  Vec z(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) z[static_cast<std::size_t>(i)] = rng.gaussian();
  for (int i = 0; i < d; ++i) {
    double s = dist.mean[static_cast<std::size_t>(i)];
    for (int j = 0; j <= i; ++j) {
      s += chol[static_cast<std::size_t>(i) * d + static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(j)];
    }
    out[i] = s;
  }
}

void sample_ball(const ReferenceDistribution& dist, Rng& rng, double* out) {
  const int d = dist.dim;
  Vec z(static_cast<std::size_t>(d));
  double len = 0.0;
  do {
    len = 0.0;
    for (int i = 0; i < d; ++i) {
      z[static_cast<std::size_t>(i)] = rng.gaussian();
      len += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
    len = std::sqrt(len);
  } while (len < 1e-280);
  const double r = dist.radius * std::pow(rng.uniform01(), 1.0 / static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    out[i] = dist.center[static_cast<std::size_t>(i)] + r * z[static_cast<std::size_t>(i)] / len;
  }
}

struct BoundingBox {
  Vec lo, hi;
};

BoundingBox polytope_box(const HPolytope& poly) {
  const int d = poly.dim();
  BoundingBox box{Vec(static_cast<std::size_t>(d)), Vec(static_cast<std::size_t>(d))};
  for (int i = 0; i < d; ++i) {
    Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
    plus[static_cast<std::size_t>(i)] = 1.0;
    minus[static_cast<std::size_t>(i)] = -1.0;
    const SupportValue hp = support_function(poly, Direction(plus));
    const SupportValue hm = support_function(poly, Direction(minus));
    if (hp.unbounded || hm.unbounded) {
      throw std::invalid_argument("uniform_polytope: sampling requires a bounded polytope");
    }
    box.hi[static_cast<std::size_t>(i)] = hp.value;
    box.lo[static_cast<std::size_t>(i)] = -hm.value;
  }
  return box;
}

void sample_polytope(const ReferenceDistribution& dist, Rng& rng, const BoundingBox& box,
                     long long& proposals, long long& accepts, double* out) {
  const int d = dist.dim;
  Vec x(static_cast<std::size_t>(d));
  for (;;) {
    for (int i = 0; i < d; ++i) {
      x[static_cast<std::size_t>(i)] =
          box.lo[static_cast<std::size_t>(i)] +
          (box.hi[static_cast<std::size_t>(i)] - box.lo[static_cast<std::size_t>(i)]) * rng.uniform01();
    }
    ++proposals;
    if (dist.polytope->contains(x, 0.0)) {
      ++accepts;
      std::copy(x.begin(), x.end(), out);
      return;
    }
    if (proposals >= 100000 && accepts * 10000 < proposals) {
      throw DegeneratePolytopeError(
          "uniform_polytope: rejection acceptance rate below 1e-4 over 1e5 proposals");
    }
  }
}

}  // namespace

PointCloud sample(const ReferenceDistribution& dist, long long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample: n must be >= 1");
  Rng rng(seed);
  const int d = dist.dim;
  std::vector<double> data(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));

  switch (dist.kind) {
    case DistKind::kGaussian: {
      const std::vector<double> chol = cholesky_or_throw(dist.cov, d);
      for (long long i = 0; i < n; ++i) {
        sample_gaussian(dist, rng, chol, data.data() + static_cast<std::size_t>(i) * d);
      }
      break;
    }
    case DistKind::kUniformBall: {
      for (long long i = 0; i < n; ++i) {
        sample_ball(dist, rng, data.data() + static_cast<std::size_t>(i) * d);
      }
      break;
    }
    case DistKind::kUniformPolytope: {
      const BoundingBox box = polytope_box(*dist.polytope);
      long long proposals = 0, accepts = 0;
      for (long long i = 0; i < n; ++i) {
        sample_polytope(dist, rng, box, proposals, accepts, data.data() + static_cast<std::size_t>(i) * d);
      }
      break;
    }
    case DistKind::kAtomMixture: {
      std::vector<double> chol;
      std::optional<BoundingBox> box;
      if (dist.background) {
        if (dist.background->kind == DistKind::kGaussian) {
          chol = cholesky_or_throw(dist.background->cov, d);
        } else if (dist.background->kind == DistKind::kUniformPolytope) {
          box = polytope_box(*dist.background->polytope);
        }
      }
      long long proposals = 0, accepts = 0;
      for (long long i = 0; i < n; ++i) {
        double* out = data.data() + static_cast<std::size_t>(i) * d;
        double u = rng.uniform01();
        bool placed = false;
        for (std::size_t k = 0; k < dist.atom_points.size(); ++k) {
          if (u < dist.atom_weights[k]) {
            std::copy(dist.atom_points[k].begin(), dist.atom_points[k].end(), out);
            placed = true;
            break;
          }
          u -= dist.atom_weights[k];
        }
        if (placed) continue;
        if (!dist.background) {
          // Weights sum to 1 up to rounding; attribute the sliver to the
          // last atom.
          std::copy(dist.atom_points.back().begin(), dist.atom_points.back().end(), out);
          continue;
        }
        switch (dist.background->kind) {
          case DistKind::kGaussian:
            sample_gaussian(*dist.background, rng, chol, out);
            break;
          case DistKind::kUniformBall:
            sample_ball(*dist.background, rng, out);
            break;
          case DistKind::kUniformPolytope:
            sample_polytope(*dist.background, rng, *box, proposals, accepts, out);
            break;
          case DistKind::kAtomMixture:
            throw UnsupportedDistributionError("atom_mixture: nested mixtures not supported");
        }
      }
      break;
    }
  }
  return PointCloud(std::move(data), n, d);
}

PopulationLevelSet population_levelset(const ReferenceDistribution& dist, LevelSpec level,
                                       double net_delta) {
  if (level.alpha > 0.5) {
    throw DegenerateLevelError(
        "population_levelset: alpha > 1/2 gives an empty level set for the atomless "
        "symmetric oracle distributions");
  }
  PopulationLevelSet out;
  out.alpha = level.alpha;

  switch (dist.kind) {
    case DistKind::kGaussian: {
      const int d = dist.dim;
      bool isotropic = true;
      const double sigma2 = dist.cov[0];
      for (int i = 0; i < d && isotropic; ++i) {
        for (int j = 0; j < d && isotropic; ++j) {
          const double want = (i == j) ? sigma2 : 0.0;
          if (std::fabs(dist.cov[static_cast<std::size_t>(i) * d + j] - want) >
              1e-12 * std::max(1.0, sigma2)) {
            isotropic = false;
          }
        }
      }
      if (isotropic) {
        out.kind = PopulationLevelSet::Kind::kBall;
        out.center = dist.mean;
        out.radius = (level.alpha == 0.5)
                         ? 0.0
                         : inverse_normal_cdf(1.0 - level.alpha) * std::sqrt(sigma2);
        return out;
      }
      const SphereNet net = deterministic_net(d, net_delta);
      HPolytope poly(d);
      for (const Direction& u : net.directions) {
        poly.add(Halfspace{u, gaussian_quantile(dist.mean, dist.cov, u, level)});
      }
      out.kind = PopulationLevelSet::Kind::kHPolytopeApprox;
      out.polytope = std::move(poly);
      return out;
    }
    case DistKind::kUniformBall: {
      out.kind = PopulationLevelSet::Kind::kBall;
      out.center = dist.center;
      out.radius = (level.alpha == 0.5) ? 0.0 : uniform_ball_quantile(dist.radius, dist.dim, level);
      return out;
    }
    default:
      throw UnsupportedDistributionError(
          "population_levelset: oracle available for gaussian and uniform-ball only");
  }
}

HPolytope ball_to_hpolytope(const Vec& center, double radius, const SphereNet& net) {
  HPolytope poly(static_cast<int>(center.size()));
  for (const Direction& u : net.directions) {
    poly.add(Halfspace{u, dot(u.span(), center) + radius});
  }
  return poly;
}

CentroidDepthEstimate logconcave_centroid_depth_check(const ReferenceDistribution& dist,
                                                      long long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("logconcave_centroid_depth_check: trials >= 1");
  if (dist.kind == DistKind::kAtomMixture) {
    throw std::invalid_argument("logconcave_centroid_depth_check: distribution is not log-concave");
  }

  Vec centroid;
  switch (dist.kind) {
    case DistKind::kGaussian:
      centroid = dist.mean;
      break;
    case DistKind::kUniformBall:
      centroid = dist.center;
      break;
    case DistKind::kUniformPolytope: {
      // Centroid estimated from an independent sample batch.
      const PointCloud batch = sample(dist, trials, derive_seed(seed, 101, 0));
      centroid.assign(static_cast<std::size_t>(dist.dim), 0.0);
      for (long long i = 0; i < batch.size(); ++i) {
        const auto p = batch.point(i);
        for (int c = 0; c < dist.dim; ++c) centroid[static_cast<std::size_t>(c)] += p[c];
      }
      for (double& c : centroid) c /= static_cast<double>(trials);
      break;
    }
    case DistKind::kAtomMixture:
      break;  // unreachable
  }

  const PointCloud cloud = sample(dist, trials, derive_seed(seed, 102, 0));
  const auto directions = uniform_directions(dist.dim, 256, derive_seed(seed, 103, 0));

  CentroidDepthEstimate est;
  est.trials = trials;
  est.min_mass = 1.0;
  for (const Direction& u : directions) {
    const double threshold = dot(u.span(), centroid);
    long long count = 0;
    for (long long i = 0; i < trials; ++i) {
      if (dot(u.span(), cloud.point(i)) <= threshold) ++count;
    }
    const double mass = static_cast<double>(count) / static_cast<double>(trials);
    est.min_mass = std::min(est.min_mass, mass);
  }
  est.std_error = std::sqrt(est.min_mass * (1.0 - est.min_mass) / static_cast<double>(trials));
  return est;
}

}  // namespace htdepth
