#include "htdepth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "htdepth/linprog.hpp"

namespace htdepth {

namespace {

// Event angles of the indicator 1[<u(theta), v> <= 0], which is 1 exactly on
// the closed arc [angle(rot90(v)), angle(-rot90(v))]. Computing both ends
// directly with atan2 makes antiparallel vectors share event angles
// bit-exactly.
double on_angle(double vx, double vy) { return std::atan2(vx, -vy); }
double off_angle(double vx, double vy) { return std::atan2(-vx, vy); }

}  // namespace

DepthValue depth_exact_2d(const PointCloud& cloud, std::span<const double> x) {
  if (cloud.dim() != 2) throw std::invalid_argument("depth_exact_2d: cloud must be 2-dimensional");
  if (x.size() != 2) throw std::invalid_argument("depth_exact_2d: point must be 2-dimensional");
  const long long n = cloud.size();

  long long coincident = 0;
  // (angle, +ons, -offs) merged by exact angle value
  std::map<double, std::pair<long long, long long>> events;
  std::vector<std::pair<double, double>> spokes;  // nonzero X_i - x
  spokes.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const auto p = cloud.point(i);
    const double vx = p[0] - x[0], vy = p[1] - x[1];
    if (vx == 0.0 && vy == 0.0) {
      ++coincident;
      continue;
    }
    spokes.emplace_back(vx, vy);
    events[on_angle(vx, vy)].first += 1;
    events[off_angle(vx, vy)].second += 1;
  }
  if (spokes.empty()) return DepthValue{n, n};

  // Count on the wrap-around arc (after the last event), evaluated directly.
  const double first = events.begin()->first;
  const double last = events.rbegin()->first;
  const double theta0 = (events.size() == 1) ? first + M_PI : 0.5 * (last + first + 2.0 * M_PI);
  const double ux = std::cos(theta0), uy = std::sin(theta0);
  long long current = 0;
  for (const auto& [vx, vy] : spokes) {
    if (ux * vx + uy * vy <= 0.0) ++current;
  }

  // Sweep: the value on the open arc after each event angle is the previous
  // arc's value plus the entering indicators minus the leaving ones. The
  // minimum over the circle is attained on open arcs, never strictly at an
  // event angle, so arc values suffice.
  long long best = current;
  for (const auto& [angle, delta] : events) {
    current += delta.first - delta.second;
    best = std::min(best, current);
  }
  return DepthValue{best + coincident, n};
}

DepthValue depth_upper_bound(const PointCloud& cloud, std::span<const double> x,
                             const SphereNet& net) {
  if (net.directions.empty()) throw std::invalid_argument("depth_upper_bound: empty net");
  if (static_cast<int>(x.size()) != cloud.dim()) {
    throw std::invalid_argument("depth_upper_bound: point dimension mismatch");
  }
  const long long n = cloud.size();
  long long best = n;
  for (const Direction& u : net.directions) {
    if (u.dim() != cloud.dim()) {
      throw std::invalid_argument("depth_upper_bound: net dimension mismatch");
    }
    const double level = dot(u.span(), x);
    long long count = 0;
    for (long long i = 0; i < n; ++i) {
      if (dot(u.span(), cloud.point(i)) <= level) ++count;
    }
    best = std::min(best, count);
  }
  return DepthValue{best, n};
}

namespace {

// Canonical +-e_i probes plus the two +-(1,...,1)/sqrt(d) diagonals; an
// unbounded convex set has a recession direction w != 0, and some +-e_i has
// positive inner product with it, so probing these suffices.
std::vector<Direction> unboundedness_probes(int d) {
  std::vector<Direction> probes;
  for (int i = 0; i < d; ++i) {
    Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
    plus[static_cast<std::size_t>(i)] = 1.0;
    minus[static_cast<std::size_t>(i)] = -1.0;
    probes.emplace_back(plus);
    probes.emplace_back(minus);
  }
  probes.emplace_back(Vec(static_cast<std::size_t>(d), 1.0));
  probes.emplace_back(Vec(static_cast<std::size_t>(d), -1.0));
  return probes;
}

Emptiness classify(const HPolytope& poly) {
  if (polytope_is_empty(poly)) return Emptiness::kEmpty;
  for (const Direction& u : unboundedness_probes(poly.dim())) {
    if (support_function(poly, u).unbounded) return Emptiness::kUnbounded;
  }
  return Emptiness::kNonempty;
}

}  // namespace

LevelSetResult levelset_sampled(const PointCloud& cloud, LevelSpec level,
                                const std::vector<Direction>& directions) {
  if (directions.empty()) throw std::invalid_argument("levelset_sampled: need >= 1 direction");
  HPolytope poly(cloud.dim());
  for (const Direction& u : directions) {
    poly.add(Halfspace{u, empirical_upper_quantile(cloud, u, level)});
  }
  LevelSetResult result{std::move(poly), level, static_cast<long long>(directions.size()),
                        std::nullopt, Emptiness::kNonempty};
  result.emptiness = classify(result.polytope);
  return result;
}

LevelSetResult levelset_exact_2d(const PointCloud& cloud, LevelSpec level) {
  if (cloud.dim() != 2) throw std::invalid_argument("levelset_exact_2d: cloud must be 2-dimensional");
  const long long n = cloud.size();

  // Critical angles: +- normals of all pairwise differences. Between
  // consecutive critical angles the maximizing order statistic is a fixed
  // sample point, so the endpoint constraints plus one mid-arc
  // representative pin the set exactly.
  std::vector<double> angles;
  for (long long i = 0; i < n; ++i) {
    const auto pi = cloud.point(i);
    for (long long j = i + 1; j < n; ++j) {
      const auto pj = cloud.point(j);
      const double wx = pi[0] - pj[0], wy = pi[1] - pj[1];
      if (wx == 0.0 && wy == 0.0) continue;
      angles.push_back(on_angle(wx, wy));
      angles.push_back(off_angle(wx, wy));
    }
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  std::vector<double> candidates = angles;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double a = angles[k];
    const double b = (k + 1 < angles.size()) ? angles[k + 1] : angles.front() + 2.0 * M_PI;
    candidates.push_back(0.5 * (a + b));
  }
  for (int k = 0; k < 8; ++k) {
    candidates.push_back(-M_PI + 2.0 * M_PI * static_cast<double>(k) / 8.0);
  }

  HPolytope poly(2);
  for (double ang : candidates) {
    const Direction u({std::cos(ang), std::sin(ang)});
    poly.add(Halfspace{u, empirical_upper_quantile(cloud, u, level)});
  }
  LevelSetResult result{std::move(poly), level, static_cast<long long>(candidates.size()),
                        std::nullopt, Emptiness::kNonempty};
  result.emptiness = classify(result.polytope);
  return result;
}

AgreementReport representations_agree(const PointCloud& cloud, LevelSpec level,
                                      const std::vector<Vec>& grid, double tol) {
  if (cloud.dim() != 2) {
    throw std::invalid_argument("representations_agree: cloud must be 2-dimensional");
  }
  AgreementReport report;
  report.total = static_cast<long long>(grid.size());
  if (grid.empty()) return report;

  double grid_radius = 0.0;
  for (const Vec& g : grid) grid_radius = std::max(grid_radius, norm(g));
  // Net fine enough that the quantile-membership slack over the net stays
  // below half the excluded boundary band.
  const double reach = std::max(1.0, cloud.max_norm() + grid_radius);
  const double delta = std::clamp(tol / (2.0 * reach), 2e-5, 1e-3);
  const SphereNet net = deterministic_net(2, delta);

  std::vector<double> offsets;
  offsets.reserve(net.directions.size());
  for (const Direction& u : net.directions) {
    offsets.push_back(empirical_upper_quantile(cloud, u, level));
  }

  const double n_alpha = level.alpha * static_cast<double>(cloud.size());
  for (const Vec& g : grid) {
    if (g.size() != 2) throw std::invalid_argument("representations_agree: grid point dimension");
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      margin = std::min(margin, offsets[k] - dot(net.directions[k].span(), g));
    }
    if (std::fabs(margin) <= tol) {
      ++report.boundary_skipped;
      continue;
    }
    const bool by_quantile = margin > 0.0;
    const bool by_depth = static_cast<double>(depth_exact_2d(cloud, g).count) >= n_alpha;
    if (by_quantile != by_depth) ++report.disagreements;
  }
  return report;
}

AtomCheckResult atom_levelset_check(const PointCloud& cloud, LevelSpec level) {
  if (cloud.dim() != 2) throw std::invalid_argument("atom_levelset_check: cloud must be 2-dimensional");
  if (!(level.alpha > 0.5)) {
    throw std::invalid_argument("atom_levelset_check: alpha must exceed 1/2");
  }
  // Locate the most-repeated point (bit-exact equality).
  const long long n = cloud.size();
  long long best_count = 0;
  Vec atom;
  for (long long i = 0; i < n; ++i) {
    const auto p = cloud.point(i);
    long long count = 0;
    for (long long j = 0; j < n; ++j) {
      const auto q = cloud.point(j);
      if (p[0] == q[0] && p[1] == q[1]) ++count;
    }
    if (count > best_count) {
      best_count = count;
      atom.assign(p.begin(), p.end());
    }
  }
  if (2 * best_count <= n) {
    throw std::invalid_argument("atom_levelset_check: no point with multiplicity fraction > 1/2");
  }

  AtomCheckResult result;
  result.atom = atom;
  const LevelSetResult ls = levelset_exact_2d(cloud, level);
  result.emptiness = ls.emptiness;
  if (ls.emptiness != Emptiness::kNonempty) return result;

  const DepthValue depth = depth_exact_2d(cloud, atom);
  if (static_cast<double>(depth.count) < level.alpha * static_cast<double>(n)) return result;

  const SphereNet net = deterministic_net(2, 0.01);
  for (const Direction& u : net.directions) {
    const SupportValue h = support_function(ls.polytope, u);
    if (h.unbounded || std::fabs(h.value - dot(u.span(), atom)) > 1e-6) return result;
  }
  result.singleton_at_atom = true;
  return result;
}

LevelSetResult truncate(const LevelSetResult& result, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("truncate: radius must be positive");
  const int d = result.polytope.dim();

  if (result.emptiness == Emptiness::kEmpty) {
    // The convention for an empty level set is the singleton {0}: the
    // canonical facets through the origin pin it exactly.
    HPolytope origin(d);
    for (int i = 0; i < d; ++i) {
      Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
      plus[static_cast<std::size_t>(i)] = 1.0;
      minus[static_cast<std::size_t>(i)] = -1.0;
      origin.add(Halfspace{Direction(plus), 0.0});
      origin.add(Halfspace{Direction(minus), 0.0});
    }
    return LevelSetResult{std::move(origin), result.alpha, result.directions_used, radius,
                          Emptiness::kNonempty};
  }

  HPolytope poly = result.polytope;
  for (int i = 0; i < d; ++i) {
    Vec plus(static_cast<std::size_t>(d), 0.0), minus(static_cast<std::size_t>(d), 0.0);
    plus[static_cast<std::size_t>(i)] = 1.0;
    minus[static_cast<std::size_t>(i)] = -1.0;
    poly.add(Halfspace{Direction(plus), radius});
    poly.add(Halfspace{Direction(minus), radius});
  }
  if (d <= 3) {
    const int corners = 1 << d;
    for (int mask = 0; mask < corners; ++mask) {
      Vec diag(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) diag[static_cast<std::size_t>(i)] = (mask >> i & 1) ? 1.0 : -1.0;
      poly.add(Halfspace{Direction(std::move(diag)), radius});
    }
  }
  LevelSetResult out{std::move(poly), result.alpha, result.directions_used, radius,
                     Emptiness::kNonempty};
  out.emptiness = polytope_is_empty(out.polytope) ? Emptiness::kEmpty : Emptiness::kNonempty;
  return out;
}

}  // namespace htdepth
