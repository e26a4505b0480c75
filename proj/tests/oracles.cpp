#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace htdepth::testing {

double counting_upper_quantile(const std::vector<double>& projections, double alpha) {
  const double need = static_cast<double>(projections.size()) * alpha;
  double best = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (double t : projections) {
    long long count = 0;
    for (double p : projections) {
      if (p >= t) ++count;
    }
    if (static_cast<double>(count) >= need && (!found || t > best)) {
      best = t;
      found = true;
    }
  }
  if (!found) throw std::logic_error("counting_upper_quantile: no threshold qualifies");
  return best;
}

double counting_lower_quantile(const std::vector<double>& projections, double alpha) {
  const double need = static_cast<double>(projections.size()) * (1.0 - alpha);
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (double t : projections) {
    long long count = 0;
    for (double p : projections) {
      if (p <= t) ++count;
    }
    if (static_cast<double>(count) >= need && (!found || t < best)) {
      best = t;
      found = true;
    }
  }
  if (!found) throw std::logic_error("counting_lower_quantile: no threshold qualifies");
  return best;
}

namespace {

long long halfspace_count(const PointCloud& cloud, std::span<const double> x, double ux, double uy) {
  long long count = 0;
  for (long long i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    if (ux * (p[0] - x[0]) + uy * (p[1] - x[1]) <= 0.0) ++count;
  }
  return count;
}

}  // namespace

long long brute_force_depth_count_2d(const PointCloud& cloud, std::span<const double> x) {
  if (cloud.dim() != 2) throw std::invalid_argument("brute_force_depth_count_2d: d != 2");
  std::vector<double> angles;
  for (long long i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    const double vx = p[0] - x[0], vy = p[1] - x[1];
    if (vx == 0.0 && vy == 0.0) continue;
    angles.push_back(std::atan2(vx, -vy));
    angles.push_back(std::atan2(-vx, vy));
  }
  if (angles.empty()) return cloud.size();

  long long best = cloud.size();
  auto probe = [&](double ang) {
    best = std::min(best, halfspace_count(cloud, x, std::cos(ang), std::sin(ang)));
  };
  for (double a : angles) probe(a);
  for (std::size_t i = 0; i < angles.size(); ++i) {
    for (std::size_t j = i + 1; j < angles.size(); ++j) {
      const double mid = (angles[i] + angles[j]) / 2.0;
      probe(mid);
      probe(mid + M_PI);
    }
  }
  return best;
}

std::vector<Vec> vertex_enum_2d(const HPolytope& p) {
  if (p.dim() != 2) throw std::invalid_argument("vertex_enum_2d: d != 2");
  std::vector<Vec> vertices;
  const auto& hs = p.halfspaces();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const double a11 = hs[i].normal[0], a12 = hs[i].normal[1];
      const double a21 = hs[j].normal[0], a22 = hs[j].normal[1];
      const double det = a11 * a22 - a12 * a21;
      if (std::fabs(det) < 1e-12) continue;
      const double b1 = hs[i].offset, b2 = hs[j].offset;
      const Vec v = {(b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det};
      if (!p.contains(v, 1e-7)) continue;
      bool dup = false;
      for (const Vec& w : vertices) {
        if (std::hypot(v[0] - w[0], v[1] - w[1]) < 1e-8) {
          dup = true;
          break;
        }
      }
      if (!dup) vertices.push_back(v);
    }
  }
  return vertices;
}

double vertex_support_2d(const std::vector<Vec>& vertices, const Direction& u) {
  if (vertices.empty()) throw std::invalid_argument("vertex_support_2d: no vertices");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : vertices) best = std::max(best, dot(u.span(), v));
  return best;
}

namespace {

double point_segment_distance(double px, double py, const Vec& a, const Vec& b) {
  const double abx = b[0] - a[0], aby = b[1] - a[1];
  const double apx = px - a[0], apy = py - a[1];
  const double len2 = abx * abx + aby * aby;
  double t = (len2 > 0.0) ? (apx * abx + apy * aby) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (a[0] + t * abx), py - (a[1] + t * aby));
}

std::vector<Vec> hull_order(std::vector<Vec> vertices) {
  double cx = 0.0, cy = 0.0;
  for (const Vec& v : vertices) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<double>(vertices.size());
  cy /= static_cast<double>(vertices.size());
  std::sort(vertices.begin(), vertices.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - cy, a[0] - cx) < std::atan2(b[1] - cy, b[0] - cx);
  });
  return vertices;
}

}  // namespace

double point_to_polygon_distance(std::span<const double> x, const std::vector<Vec>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("point_to_polygon_distance: no vertices");
  if (vertices.size() == 1) return std::hypot(x[0] - vertices[0][0], x[1] - vertices[0][1]);
  const std::vector<Vec> ring = hull_order(vertices);

  // Inside test: x is in the hull iff it is on the inner side of every edge.
  bool inside = true;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec& a = ring[i];
    const Vec& b = ring[(i + 1) % ring.size()];
    const double cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
    if (cross < -1e-12) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    best = std::min(best, point_segment_distance(x[0], x[1], ring[i], ring[(i + 1) % ring.size()]));
  }
  return best;
}

double hausdorff_vertex_oracle_2d(const HPolytope& p, const HPolytope& q) {
  const std::vector<Vec> vp = vertex_enum_2d(p);
  const std::vector<Vec> vq = vertex_enum_2d(q);
  double best = 0.0;
  for (const Vec& v : vp) best = std::max(best, point_to_polygon_distance(v, vq));
  for (const Vec& v : vq) best = std::max(best, point_to_polygon_distance(v, vp));
  return best;
}

HPolytope random_bounded_polytope_2d(Rng& rng) {
  HPolytope p(2);
  const double axis_offsets[4] = {0.3 + 1.7 * rng.uniform01(), 0.3 + 1.7 * rng.uniform01(),
                                  0.3 + 1.7 * rng.uniform01(), 0.3 + 1.7 * rng.uniform01()};
  p.add(Halfspace{Direction({1.0, 0.0}), axis_offsets[0]});
  p.add(Halfspace{Direction({-1.0, 0.0}), axis_offsets[1]});
  p.add(Halfspace{Direction({0.0, 1.0}), axis_offsets[2]});
  p.add(Halfspace{Direction({0.0, -1.0}), axis_offsets[3]});
  const int extra = 3 + static_cast<int>(rng.uniform01() * 8.0);
  for (int i = 0; i < extra; ++i) {
    const double ang = 2.0 * M_PI * rng.uniform01();
    p.add(Halfspace{Direction({std::cos(ang), std::sin(ang)}), 0.3 + 1.7 * rng.uniform01()});
  }
  return p;
}

}  // namespace htdepth::testing
