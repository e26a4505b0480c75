#include "htdepth/geom.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace htdepth {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double x = 0.0, y = 0.0, s = 0.0;
  do {
    x = 2.0 * uniform01() - 1.0;
    y = 2.0 * uniform01() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = y * f;
  has_spare_ = true;
  return x * f;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  // splitmix64 finalizer applied to the mixed words
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(base) ^ mix(stream * 0x9e3779b97f4a7c15ULL + 1) ^ mix(index + 0x632be59bd9b4e019ULL));
}

Direction::Direction(Vec coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("Direction: dimension must be >= 2");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Direction: non-finite coordinate");
  }
  const double len = norm(coords_);
  if (len < 1e-300) {
    throw std::invalid_argument("Direction: zero vector cannot be normalized");
  }
  for (double& c : coords_) c /= len;
}

double chord_distance(const Direction& a, const Direction& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double dlt = a[i] - b[i];
    s += dlt * dlt;
  }
  return std::sqrt(s);
}

bool Halfspace::contains(std::span<const double> x, double tol) const {
  return dot(normal.span(), x) <= offset + tol;
}

HPolytope::HPolytope(int dim) : dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("HPolytope: dimension must be >= 1");
}

HPolytope::HPolytope(std::vector<Halfspace> halfspaces, int dim)
    : halfspaces_(std::move(halfspaces)), dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("HPolytope: dimension must be >= 1");
  for (const Halfspace& h : halfspaces_) {
    if (h.normal.dim() != dim_) {
      throw std::invalid_argument("HPolytope: halfspace dimension mismatch");
    }
    if (!std::isfinite(h.offset)) throw std::invalid_argument("HPolytope: non-finite offset");
  }
}

void HPolytope::add(Halfspace h) {
  if (h.normal.dim() != dim_) {
    throw std::invalid_argument("HPolytope: halfspace dimension mismatch");
  }
  if (!std::isfinite(h.offset)) throw std::invalid_argument("HPolytope: non-finite offset");
  halfspaces_.push_back(std::move(h));
}

bool HPolytope::contains(std::span<const double> x, double tol) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("HPolytope::contains: point dimension mismatch");
  }
  for (const Halfspace& h : halfspaces_) {
    if (!h.contains(x, tol)) return false;
  }
  return true;
}

bool polytope_contains(const HPolytope& p, std::span<const double> x, double tol) {
  return p.contains(x, tol);
}

PointCloud::PointCloud(std::vector<double> data, long long n, int dim)
    : data_(std::move(data)), n_(n), dim_(dim) {
  if (n_ < 1) throw std::invalid_argument("PointCloud: need at least one point");
  if (dim_ < 1) throw std::invalid_argument("PointCloud: dimension must be >= 1");
  if (data_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("PointCloud: data size does not match n*d");
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw std::invalid_argument("PointCloud: non-finite coordinate");
  }
}

double PointCloud::max_norm() const {
  double best = 0.0;
  for (long long i = 0; i < n_; ++i) best = std::max(best, norm(point(i)));
  return best;
}

std::vector<Direction> uniform_directions(int d, long long m, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("uniform_directions: d must be >= 2");
  if (m < 1) throw std::invalid_argument("uniform_directions: m must be >= 1");
  Rng rng(seed);
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(m));
  Vec v(static_cast<std::size_t>(d));
  for (long long j = 0; j < m; ++j) {
    double len2 = 0.0;
    do {
      len2 = 0.0;
      for (int i = 0; i < d; ++i) {
        v[static_cast<std::size_t>(i)] = rng.gaussian();
        len2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      }
    } while (len2 < 1e-280);
    out.emplace_back(v);
  }
  return out;
}

namespace {

std::vector<Vec> net_points(int d, double delta) {
  std::vector<Vec> out;
  if (d == 2) {
    const long long k =
        static_cast<long long>(std::ceil(2.0 * M_PI / (2.0 * std::asin(delta / 2.0))));
    out.reserve(static_cast<std::size_t>(k));
    for (long long j = 0; j < k; ++j) {
      const double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(k);
      out.push_back(Vec{std::cos(ang), std::sin(ang)});
    }
    return out;
  }
  // Latitude bands around the first axis. A point (cos t, sin t * v) with
  // |t - t_k| <= delta/4 and a ring point (cos t_k, sin t_k * w) with
  // sin(t_k)*|v - w| <= 0.35*delta + band drift is within chord
  //   sqrt((delta/4)^2 + (delta/4 + 0.52*0.35*delta)^2) <= 0.5*delta,
  // so the covering radius is certified at delta/2, half the contract.
  const double band = delta / 2.0;
  const double ring_chord = 0.35 * delta;
  const long long bands = static_cast<long long>(std::ceil(M_PI / band));
  for (long long k = 0; k <= bands; ++k) {
    const double theta = std::min(static_cast<double>(k) * band, M_PI);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    if (s < 1e-12 || ring_chord / s >= 2.0) {
      Vec p(static_cast<std::size_t>(d), 0.0);
      p[0] = (c >= 0.0) ? 1.0 : -1.0;
      out.push_back(std::move(p));
      continue;
    }
    const std::vector<Vec> ring = net_points(d - 1, std::min(1.0, ring_chord / s));
    for (const Vec& w : ring) {
      Vec p(static_cast<std::size_t>(d));
      p[0] = c;
      for (int i = 0; i + 1 < d; ++i) p[static_cast<std::size_t>(i + 1)] = s * w[static_cast<std::size_t>(i)];
      out.push_back(std::move(p));
    }
  }
  return out;
}

struct CellKey {
  long long c[3];
  bool operator==(const CellKey& o) const {
    return c[0] == o.c[0] && c[1] == o.c[1] && c[2] == o.c[2];
  }
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (int i = 0; i < 3; ++i) {
      h ^= static_cast<std::uint64_t>(k.c[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

SphereNet deterministic_net(int d, double delta) {
  if (d < 2) throw std::invalid_argument("deterministic_net: d must be >= 2");
  if (!(delta > 0.0) || delta > 1.0) {
    throw std::invalid_argument("deterministic_net: delta must be in (0, 1]");
  }
  std::vector<Vec> raw = net_points(d, delta);
  std::vector<Direction> dirs;
  dirs.reserve(raw.size());
  for (Vec& p : raw) dirs.emplace_back(std::move(p));
  return SphereNet{std::move(dirs), delta, NetKind::kDeterministicCovering};
}

bool is_delta_net(const std::vector<Direction>& candidate, double delta, const SphereNet& probe) {
  if (!(delta > 0.0)) throw std::invalid_argument("is_delta_net: delta must be positive");
  if (probe.delta > delta / 4.0 * (1.0 + 1e-12)) {
    throw std::invalid_argument("is_delta_net: probe covering radius must be <= delta/4");
  }
  if (candidate.empty()) return false;
  const int d = candidate.front().dim();
  const double margin = delta / 2.0;

  if (d <= 3) {
    // Spatial hash on cells of side `margin`; a match within chord margin
    // lies in one of the 3^d neighboring cells.
    std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
    auto key_of = [&](std::span<const double> x) {
      CellKey k{{0, 0, 0}};
      for (int i = 0; i < d; ++i) k.c[i] = static_cast<long long>(std::floor(x[static_cast<std::size_t>(i)] / margin));
      return k;
    };
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      grid[key_of(candidate[j].span())].push_back(j);
    }
    for (const Direction& p : probe.directions) {
      const CellKey base = key_of(p.span());
      bool found = false;
      const long long lo2 = (d >= 3) ? -1 : 0, hi2 = (d >= 3) ? 1 : 0;
      for (long long a = -1; a <= 1 && !found; ++a) {
        for (long long b = -1; b <= 1 && !found; ++b) {
          for (long long c = lo2; c <= hi2 && !found; ++c) {
            CellKey k{{base.c[0] + a, base.c[1] + b, base.c[2] + c}};
            auto it = grid.find(k);
            if (it == grid.end()) continue;
            for (std::size_t j : it->second) {
              if (chord_distance(p, candidate[j]) <= margin) {
                found = true;
                break;
              }
            }
          }
        }
      }
      if (!found) return false;
    }
    return true;
  }

  for (const Direction& p : probe.directions) {
    bool found = false;
    for (const Direction& c : candidate) {
      if (chord_distance(p, c) <= margin) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace htdepth
